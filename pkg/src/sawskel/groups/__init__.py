from .backends import ALL, AffineBackend, DirectProductBackend, FreeProductBackend, TableBackend
from .core import Alphabet, Ball, Element, Group, build_group, load_group_json
from .presets import ALL_PRESETS, PRESET_NAMES, preset, preset_spec

__all__ = [
    "ALL", "AffineBackend", "DirectProductBackend", "FreeProductBackend", "TableBackend",
    "Alphabet", "Ball", "Element", "Group", "build_group", "load_group_json",
    "ALL_PRESETS", "PRESET_NAMES", "preset", "preset_spec",
]
