"""
Classical-limit pattern storage with coherent states
"""

from .overlap import (
    ClassicalPattern,
    classical_gap,
    distance_sq,
    distinguishable,
    overlap_amplitude,
    overlap_sq,
)
from .packing import Packing, level_multiplicity, pack_patterns, pack_sweep

__all__ = [
    "ClassicalPattern",
    "classical_gap",
    "distance_sq",
    "distinguishable",
    "overlap_amplitude",
    "overlap_sq",
    "Packing",
    "level_multiplicity",
    "pack_patterns",
    "pack_sweep",
]
