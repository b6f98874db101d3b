"""Deterministic text and JSON renderings of evaluation results."""
from __future__ import annotations

from .axioms import UNDEFINED, Flags, PowerEntry, QFunctionFlags, QuasiFunction
from .stat import DistributionReport, OccupancyVector
from .values import MacroAtom, Occurrence, QSet, to_json, to_text

EXPAND_LIMIT = 64


def bullets(v: OccupancyVector) -> str:
    width = max(v.N, 1)
    return "|" + "|".join(("*" * c).ljust(width) for c in v.counts) + "|"


def occupancy_text(v: OccupancyVector) -> str:
    return "(" + ", ".join(map(str, v.counts)) + ")"


def report_text(r: DistributionReport) -> str:
    lines = [f"# {r.model} statistics: N={r.N} particles in n={r.n} boxes"]
    occ_w = max([len("occupancy")] + [len(occupancy_text(v)) for v, _ in r.per_occupancy])
    wt_w = max([len("weight")] + [len(str(w)) for _, w in r.per_occupancy])
    lines.append(f"{'occupancy'.ljust(occ_w)}  {'weight'.rjust(wt_w)}  probability  boxes")
    for v, w in r.per_occupancy:
        p = r.probability(w)
        lines.append(
            f"{occupancy_text(v).ljust(occ_w)}  {str(w).rjust(wt_w)}  "
            f"{float(p):11.6f}  {bullets(v)}"
        )
    lines.append(f"total {r.total}")
    best = ", ".join(occupancy_text(v) for v in r.most_probable) or "none"
    lines.append(f"most probable: {best}")
    if r.tuples is not None:
        lines.append("tuples:")
        for boxes, mult in r.tuples:
            lines.append(f"  {mult} x <" + ", ".join(to_text(b) for b in boxes) + ">")
    elif 0 < r.total <= EXPAND_LIMIT and any(w > 1 for _, w in r.per_occupancy):
        lines.append("possibilities:")
        for v, w in r.per_occupancy:
            lines.extend([f"  {bullets(v)}"] * w)
    return "\n".join(lines)


def qfunction_text(f: QuasiFunction) -> str:
    seen, parts = set(), []
    for u, v in f.pairs:
        if u.view in seen:
            continue
        seen.add(u.view)
        parts.append(f"{to_text(u.view)} -> {to_text(v.view)}")
    return "{" + "; ".join(parts) + "}"


def as_text(result) -> str:
    if result is UNDEFINED:
        return "undefined"
    if isinstance(result, bool):
        return "true" if result else "false"
    if isinstance(result, int):
        return str(result)
    if isinstance(result, (QSet, Occurrence, MacroAtom)):
        return to_text(result)
    if isinstance(result, Flags):
        return " ".join(result.names())
    if isinstance(result, QFunctionFlags):
        return " ".join(
            f"{k}={'true' if getattr(result, k) else 'false'}"
            for k in ("q_injection", "q_surjection", "q_bijection")
        )
    if isinstance(result, DistributionReport):
        return report_text(result)
    if isinstance(result, OccupancyVector):
        return occupancy_text(result)
    if isinstance(result, list):
        if result and isinstance(result[0], PowerEntry):
            lines = [f"{e.multiplicity} x {to_text(e.subset)}" for e in result]
            lines.append(f"total {sum(e.multiplicity for e in result)}")
            return "\n".join(lines)
        return "\n".join(as_text(r) for r in result)
    if isinstance(result, QuasiFunction):
        return qfunction_text(result)
    raise TypeError(f"cannot render {result!r}")


def as_json(result, debug: bool = False):
    if result is UNDEFINED:
        return {"kind": "undefined"}
    if isinstance(result, bool):
        return {"kind": "boolean", "value": result}
    if isinstance(result, int):
        return {"kind": "number", "value": str(result)}
    if isinstance(result, (QSet, Occurrence, MacroAtom)):
        return to_json(result, debug)
    if isinstance(result, Flags):
        return {"kind": "flags", "flags": result.names()}
    if isinstance(result, QFunctionFlags):
        return {
            "kind": "qfunction_flags",
            "q_injection": result.q_injection,
            "q_surjection": result.q_surjection,
            "q_bijection": result.q_bijection,
        }
    if isinstance(result, DistributionReport):
        doc = result.to_json()
        if result.tuples is not None:
            doc["tuples"] = [
                {"boxes": [to_json(b, debug) for b in boxes], "multiplicity": str(mult)}
                for boxes, mult in result.tuples
            ]
        return doc
    if isinstance(result, OccupancyVector):
        return list(result.counts)
    if isinstance(result, QuasiFunction):
        return {
            "kind": "qfunction",
            "graph": to_json(result.graph, debug),
            "map": [[to_json(u, debug), to_json(v, debug)] for u, v in result.pairs],
        }
    if isinstance(result, list):
        if result and isinstance(result[0], PowerEntry):
            return {
                "kind": "power",
                "entries": [
                    {"subset": to_json(e.subset, debug), "multiplicity": str(e.multiplicity)}
                    for e in result
                ],
                "total": str(sum(e.multiplicity for e in result)),
            }
        return {"kind": "list", "items": [as_json(r, debug) for r in result]}
    raise TypeError(f"cannot render {result!r}")
