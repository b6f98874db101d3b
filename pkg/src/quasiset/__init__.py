"""Finite-model kernel of quasi-set theory with occupancy combinatorics."""
from .axioms import (
    UNDEFINED,
    Flags,
    PowerEntry,
    QFunctionFlags,
    QuasiFunction,
    big_union,
    choice_qset,
    classify,
    classify_qfunction,
    difference,
    enumerate_qfunctions,
    extensional_eq,
    indistinguishable,
    intersection,
    is_quasi_function,
    member,
    multiset,
    ordered_pair,
    power_qset,
    power_total,
    product,
    qsimilar,
    quasi_cardinal,
    quotient,
    raw_disjoint,
    replacement_image,
    satisfies_choice,
    separation,
    similar,
    strong_singleton,
    subset,
    swap_indistinguishable,
    union,
    weak_pair,
    weak_singleton,
)
from .errors import *  # noqa: F401,F403
from .stat import (
    DistributionReport,
    OccupancyVector,
    be_report,
    distributions_of_qset,
    enumerate_occupancies,
    fd_report,
    mb_report,
    most_probable,
    multinomial_weight,
)
from .universe import Universe
from .values import (
    EMPTY,
    M,
    MacroAtom,
    Occurrence,
    QSet,
    Species,
    View,
    canonicalize,
    from_json,
    from_view,
    m,
    pure,
    qset,
    retag,
    to_json,
    to_text,
    view_of,
)

__version__ = "0.1.0"
