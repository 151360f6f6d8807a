"""
Packing of mutually distinguishable classical patterns inside a gap budget

Amplitudes live on the square lattice alpha_j = pitch * (u_j + i v_j) with
pitch = sqrt(threshold), so any two lattice patterns are at squared distance
>= threshold. A pattern is admitted when it stays in the small-excursion
regime |alpha_j|^2 <= kappa/g and its classical gap on the critical uniform
network, (g/2) sum_{j != k} |alpha_j|^2 |alpha_k|^2, fits the budget. Every
admitted lattice point is kept, so the count is a certified lower bound.

With levels s_j = u_j^2 + v_j^2 the gap reads (g/2) threshold^2 P where
P = sum_{j != k} s_j s_k; counting runs over levels weighted by the number
of lattice points on each circle.
"""

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from ..config import Config, get_config
from ..critical.patterns import GAP_RELATIVE_SLACK
from ..errors import EnumerationLimitError, InvalidInputError
from .overlap import ClassicalPattern

SAMPLE_LIMIT = 10


def level_multiplicity(max_level: int) -> np.ndarray:
    """Number of integer points (u, v) with u^2 + v^2 = s, for s = 0..max_level"""
    radius = int(np.floor(np.sqrt(max_level)))
    u = np.arange(-radius, radius + 1)
    levels = (u[:, None] ** 2 + u[None, :] ** 2).ravel()
    counts = np.bincount(levels, minlength=max_level + 1)[: max_level + 1]
    return counts.astype(np.int64)


@dataclass
class Packing:
    """
    Lattice packing of classical patterns

    Attributes:
        g: Uniform coupling of the critical network
        mode_count: Number of gapless modes carrying the pattern
        gap_budget: Energy window for the classical gap
        distance_threshold: Minimal squared distance between patterns
        kappa: Small-excursion factor; |alpha_j|^2 <= kappa/g
        pitch: Lattice spacing sqrt(distance_threshold)
        max_level: Largest admitted level u^2 + v^2 per mode
        count: Number of admitted patterns
        sample: First admitted patterns in lattice order
    """

    g: float
    mode_count: int
    gap_budget: float
    distance_threshold: float
    kappa: float
    pitch: float
    max_level: int
    count: int
    sample: List[ClassicalPattern] = field(default_factory=list)

    @property
    def pair_limit(self) -> float:
        return _pair_limit(self.g, self.gap_budget, self.distance_threshold)

    def patterns(self) -> Iterator[ClassicalPattern]:
        """All admitted patterns, in lattice order"""
        for points in _iter_points(self.mode_count, self.max_level, self.pair_limit):
            yield ClassicalPattern(np.array([self.pitch * complex(u, v) for u, v in points]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "mode_count": self.mode_count,
            "gap_budget": self.gap_budget,
            "distance_threshold": self.distance_threshold,
            "kappa": self.kappa,
            "pitch": self.pitch,
            "max_level": self.max_level,
            "count": self.count,
            "sample_patterns": [p.to_dict()["alphas"] for p in self.sample],
        }


def _pair_limit(g: float, gap_budget: float, threshold: float) -> float:
    return gap_budget / (0.5 * g * threshold * threshold) * (1.0 + GAP_RELATIVE_SLACK)


def _lattice_points(max_level: int) -> List[Tuple[int, int, int]]:
    radius = int(np.floor(np.sqrt(max_level)))
    points = [
        (u * u + v * v, u, v)
        for u in range(-radius, radius + 1)
        for v in range(-radius, radius + 1)
        if u * u + v * v <= max_level
    ]
    points.sort()
    return points


def _iter_points(mode_count: int, max_level: int, pair_limit: float) -> Iterator[Tuple[Tuple[int, int], ...]]:
    points = _lattice_points(max_level)

    def extend(prefix, level_sum, pair_sum):
        if len(prefix) == mode_count:
            yield tuple(prefix)
            return
        for s, u, v in points:
            pair = pair_sum + 2 * level_sum * s
            if pair > pair_limit:
                break
            prefix.append((u, v))
            yield from extend(prefix, level_sum + s, pair)
            prefix.pop()

    yield from extend([], 0, 0)


def _count_levels(
    start: Dict[Tuple[int, int], int],
    modes: int,
    multiplicity: np.ndarray,
    pair_limit: float,
    state_limit: int,
) -> int:
    """Weighted count of level assignments for ``modes`` further modes"""
    max_level = multiplicity.size - 1
    cumulative = np.cumsum(multiplicity)
    states = dict(start)

    for remaining in range(modes, 0, -1):
        if remaining == 1:
            total = 0
            for (level_sum, pair_sum), weight in states.items():
                if level_sum == 0:
                    top = max_level
                else:
                    top = min(max_level, int((pair_limit - pair_sum) // (2 * level_sum)))
                if top >= 0:
                    total += weight * int(cumulative[top])
            return total

        following = defaultdict(int)
        for (level_sum, pair_sum), weight in states.items():
            for s in range(max_level + 1):
                if multiplicity[s] == 0:
                    continue
                pair = pair_sum + 2 * level_sum * s
                if pair > pair_limit:
                    break
                following[(level_sum + s, pair)] += weight * int(multiplicity[s])
        if len(following) > state_limit:
            raise EnumerationLimitError(
                f"Packing count needs {len(following)} intermediate states, limit {state_limit}"
            )
        states = following

    return sum(states.values())


def pack_patterns(
    g: float,
    mode_count: int,
    gap_budget: float,
    distance_threshold: Optional[float] = None,
    kappa: Optional[float] = None,
    config: Optional[Config] = None,
    sample_limit: int = SAMPLE_LIMIT,
) -> Packing:
    """
    Count lattice patterns that fit the gap budget and are pairwise distinguishable

    Args:
        g: Uniform coupling, positive
        mode_count: Gapless modes carrying the pattern
        gap_budget: Energy window, >= 0; zero keeps the zero-gap axes
        distance_threshold: Minimal squared distance; configured default when omitted
        kappa: Small-excursion factor; configured default when omitted
        config: Settings
        sample_limit: Number of patterns returned as a sample

    Returns:
        Packing with the exact lattice count
    """
    config = get_config(config)
    threshold = config.distance_threshold if distance_threshold is None else distance_threshold
    kappa = config.coherent_kappa if kappa is None else kappa

    if not (np.isfinite(g) and g > 0):
        raise InvalidInputError(f"g must be positive, got {g}")
    if mode_count < 1:
        raise InvalidInputError(f"mode_count must be >= 1, got {mode_count}")
    if not (np.isfinite(gap_budget) and gap_budget >= 0):
        raise InvalidInputError(f"Gap budget must be finite and >= 0, got {gap_budget}")
    if not (np.isfinite(threshold) and threshold > 0):
        raise InvalidInputError(f"Distance threshold must be positive, got {threshold}")
    if not (np.isfinite(kappa) and kappa > 0):
        raise InvalidInputError(f"kappa must be positive, got {kappa}")

    pitch = float(np.sqrt(threshold))
    max_level = int(np.floor(kappa / (g * threshold) * (1.0 + GAP_RELATIVE_SLACK)))
    multiplicity = level_multiplicity(max_level)
    pair_limit = _pair_limit(g, gap_budget, threshold)
    state_limit = config.enumeration_limit

    logger.debug(f"Packing: g={g:.3g} modes={mode_count} max_level={max_level} pair_limit={pair_limit:.6g}")

    first_levels = [s for s in range(max_level + 1) if multiplicity[s] > 0]
    starts = [{(s, 0): int(multiplicity[s])} for s in first_levels]

    def slab(start):
        return _count_levels(start, mode_count - 1, multiplicity, pair_limit, state_limit)

    if config.max_workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            counts = list(pool.map(slab, starts))
    else:
        counts = [slab(start) for start in starts]
    count = sum(counts)

    sample = []
    for points in _iter_points(mode_count, max_level, pair_limit):
        if len(sample) >= sample_limit:
            break
        sample.append(ClassicalPattern(np.array([pitch * complex(u, v) for u, v in points])))

    logger.info(f"Packed {count} patterns on {mode_count} modes for g={g:.3g}, budget={gap_budget:.6g}")
    return Packing(
        g=float(g),
        mode_count=int(mode_count),
        gap_budget=float(gap_budget),
        distance_threshold=float(threshold),
        kappa=float(kappa),
        pitch=pitch,
        max_level=max_level,
        count=count,
        sample=sample,
    )


def pack_sweep(
    gs: Sequence[float],
    mode_count: int,
    gap_budget: float,
    distance_threshold: Optional[float] = None,
    kappa: Optional[float] = None,
    config: Optional[Config] = None,
) -> pd.DataFrame:
    """
    Packing count for every coupling in ``gs``

    Returns:
        DataFrame with columns g, count, max_level, pitch in the order of ``gs``
    """
    config = get_config(config)
    if len(gs) == 0:
        raise InvalidInputError("The sweep needs at least one coupling")

    serial = config.model_copy(update={"max_workers": 1})

    def run(g):
        return pack_patterns(g, mode_count, gap_budget, distance_threshold, kappa, config=serial, sample_limit=0)

    if config.max_workers > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            packings = list(pool.map(run, gs))
    else:
        packings = [run(g) for g in gs]

    return pd.DataFrame(
        {
            "g": [p.g for p in packings],
            "count": [p.count for p in packings],
            "max_level": [p.max_level for p in packings],
            "pitch": [p.pitch for p in packings],
        }
    )
