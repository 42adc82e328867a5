from .automaton import STATE_CAP, Automaton, compile_forbidden
from .entropy import (
    BUILTIN_PATTERNS,
    LADDER_PATTERN,
    Bound,
    EntropyReport,
    PlainEntropy,
    plain_forbidden_words,
    plain_sft_entropy,
    rauzy_matrix,
    rauzy_upper_bound,
    resolve_pattern,
    sofic_entropy,
)
from .regex import REPEAT_CAP, parse_pattern, words_pattern
from .spectral import SpectralResult, char_poly, largest_real_root, poly_eval, spectral_radius

__all__ = [
    "STATE_CAP", "Automaton", "compile_forbidden",
    "BUILTIN_PATTERNS", "LADDER_PATTERN", "Bound", "EntropyReport", "PlainEntropy",
    "plain_forbidden_words", "plain_sft_entropy", "rauzy_matrix", "rauzy_upper_bound",
    "resolve_pattern", "sofic_entropy",
    "REPEAT_CAP", "parse_pattern", "words_pattern",
    "SpectralResult", "char_poly", "largest_real_root", "poly_eval", "spectral_radius",
]
