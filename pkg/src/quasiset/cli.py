"""Command-line front end.

Exit codes: 0 success, 1 evaluation error, 2 parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import stat
from .errors import QSetError
from .lang import EvalError, ParseError, evaluate, parse, parse_universe
from .render import as_json, as_text


def _emit(result, fmt: str, debug: bool = False):
    if fmt == "json":
        sys.stdout.write(json.dumps(as_json(result, debug), sort_keys=False) + "\n")
    else:
        sys.stdout.write(as_text(result) + "\n")


def _load_universe(path):
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        return parse_universe(fh.read())


def cmd_eval(args) -> int:
    universe = _load_universe(args.universe)
    result = evaluate(parse(args.expr), universe)
    _emit(result, args.format, args.debug_witnesses)
    return 0


def cmd_stats(args) -> int:
    _emit(stat.report(args.model, args.boxes, args.particles), args.format)
    return 0


def cmd_dist(args) -> int:
    universe = _load_universe(args.universe)
    x = evaluate(parse(args.expr), universe)
    _emit(stat.distributions_of_qset(x, args.boxes), args.format, args.debug_witnesses)
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run

    return 0 if run(seed=args.seed, out=sys.stdout) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasiset", description="Finite quasi-set kernel.")
    sub = p.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("eval", parents=[fmt], help="evaluate an expression")
    e.add_argument("expr")
    e.add_argument("--universe", metavar="FILE")
    e.add_argument("--debug-witnesses", action="store_true", help="include hidden tags in JSON")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("stats", parents=[fmt], help="MB/BE/FD distribution report")
    s.add_argument("--model", required=True, type=str.upper, choices=stat.MODELS)
    s.add_argument("-n", dest="boxes", type=int, required=True, help="number of boxes")
    s.add_argument("-N", dest="particles", type=int, required=True, help="number of particles")
    s.set_defaults(func=cmd_stats)

    d = sub.add_parser("dist", parents=[fmt], help="distribute a qset over boxes")
    d.add_argument("--expr", required=True)
    d.add_argument("-n", dest="boxes", type=int, required=True)
    d.add_argument("--universe", metavar="FILE")
    d.add_argument("--debug-witnesses", action="store_true")
    d.set_defaults(func=cmd_dist)

    t = sub.add_parser("selftest", help="run the invariant suite")
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QSetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
