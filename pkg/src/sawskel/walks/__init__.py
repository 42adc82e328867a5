from .counts import (
    HeightFunction,
    WalkCounts,
    bridge_words,
    count_bridges,
    count_saps,
    count_saws,
    is_bridge_heights,
    iter_saw_words,
    saw_words,
)
from .periodic import (
    CERTIFIED_NO,
    CERTIFIED_YES,
    UNKNOWN,
    PeriodicCertificate,
    count_periodic,
    find_periodic_from_torsion_free,
    is_periodic_word,
    is_primitive,
    iterate_bridge,
    k_extendable,
)
from .wordproblem import algorithm_M, algorithm_M_reference, direct_word_problem

__all__ = [
    "HeightFunction", "WalkCounts", "bridge_words", "count_bridges", "count_saps", "count_saws",
    "is_bridge_heights", "iter_saw_words", "saw_words",
    "CERTIFIED_NO", "CERTIFIED_YES", "UNKNOWN", "PeriodicCertificate", "count_periodic",
    "find_periodic_from_torsion_free", "is_periodic_word", "is_primitive", "iterate_bridge", "k_extendable",
    "algorithm_M", "algorithm_M_reference", "direct_word_problem",
]
