"""
Pattern counting around a critical state

With the excited neurons frozen at xi, a pattern is an occupation assignment
y on the gapless neurons. Its energy above the critical reference is
sum_{j,k in gapless} W_jk y_j y_k; the linear term vanishes at criticality.
"""

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..config import Config, get_config
from ..errors import EnumerationLimitError, InvalidInputError
from ..network import NetworkModel
from .splits import CriticalSolution

# Gaps within this relative distance of the budget count as inside.
GAP_RELATIVE_SLACK = 1e-12

# Trailing modes evaluated as one vectorized block during eager counting.
BLOCK_SIZE = 1 << 16


def _gapless_weights(model: NetworkModel, solution: CriticalSolution) -> np.ndarray:
    if solution.n != model.n:
        raise InvalidInputError(f"Solution covers {solution.n} modes, model has {model.n}")
    idx = list(solution.gapless_set)
    return model.weights[np.ix_(idx, idx)]


def gap_between(model: NetworkModel, solution: CriticalSolution, y: Sequence[float]) -> float:
    """
    Energy gap between the critical reference and the pattern ``y``

    Args:
        model: Network model
        solution: Critical reference state
        y: Occupations indexed like ``solution.gapless_set``

    Returns:
        sum_{j,k in gapless} W_jk y_j y_k
    """
    w = _gapless_weights(model, solution)
    occ = np.asarray(y, dtype=float)
    if occ.shape != (solution.m,):
        raise InvalidInputError(f"Pattern has {occ.size} entries, gapless set has {solution.m}")
    if np.any(occ < 0):
        raise InvalidInputError("Pattern occupations must be nonnegative")
    return float(occ @ w @ occ)


def pattern_count(m: int, d: int) -> int:
    """(d+1)^m basic patterns with occupations 0..d on m gapless neurons, as an exact integer"""
    if m < 1:
        raise InvalidInputError(f"Gapless mode count must be >= 1, got {m}")
    if d < 0:
        raise InvalidInputError(f"Occupation cap must be >= 0, got {d}")
    return (int(d) + 1) ** int(m)


def _budget_limit(gap_budget: float, worst_case_gap: float) -> float:
    return gap_budget + GAP_RELATIVE_SLACK * max(gap_budget, worst_case_gap, 1e-300)


@dataclass
class PatternLibrary:
    """
    Patterns on the gapless set within an energy budget

    ``count`` is None for lazy libraries until ``materialize_count`` runs.
    ``closed_form`` and ``worst_case_gap`` carry (d+1)^m and d^2 sum W for
    side-by-side reporting.
    """

    reference: CriticalSolution
    cap: int
    gap_budget: float
    closed_form: int
    worst_case_gap: float
    count: Optional[int] = None
    lazy: bool = False
    _weights: np.ndarray = field(default=None, repr=False)

    @property
    def bound_holds(self) -> bool:
        """True when every basic pattern fits the budget by the worst-case bound"""
        return self.worst_case_gap <= self.gap_budget

    def patterns(self) -> Iterator[tuple]:
        """Lazily enumerate admissible occupation tuples in lexicographic order"""
        limit = _budget_limit(self.gap_budget, self.worst_case_gap)
        for pattern in product(range(self.cap + 1), repeat=self.reference.m):
            y = np.asarray(pattern, dtype=float)
            if y @ self._weights @ y <= limit:
                yield pattern

    def __iter__(self) -> Iterator[tuple]:
        return self.patterns()

    def materialize_count(self) -> int:
        if self.count is None:
            self.count = sum(1 for _ in self.patterns())
        return self.count

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cap": self.cap,
            "gap_budget": self.gap_budget,
            "count": self.count,
            "closed_form": self.closed_form,
            "worst_case_gap": self.worst_case_gap,
            "bound_holds": self.bound_holds,
        }


def _count_eager(w: np.ndarray, d: int, limit: float) -> int:
    m = w.shape[0]
    levels = np.arange(d + 1, dtype=float)

    tail = 1
    while tail < m and (d + 1) ** (tail + 1) <= BLOCK_SIZE:
        tail += 1
    head = m - tail

    block = np.stack(np.meshgrid(*([levels] * tail), indexing="ij"), axis=-1).reshape(-1, tail)
    w_hh = w[:head, :head]
    w_ht = w[:head, head:]
    w_tt = w[head:, head:]
    block_gap = np.einsum("ij,jk,ik->i", block, w_tt, block)

    count = 0
    for prefix in product(range(d + 1), repeat=head):
        p = np.asarray(prefix, dtype=float)
        gaps = p @ w_hh @ p + 2.0 * block @ (w_ht.T @ p) + block_gap
        count += int(np.count_nonzero(gaps <= limit))
    return count


def enumerate_patterns(
    model: NetworkModel,
    solution: CriticalSolution,
    d: int,
    gap_budget: float,
    lazy: bool = False,
    config: Optional[Config] = None,
) -> PatternLibrary:
    """
    Count or enumerate gapless-set patterns with 0 <= y_j <= d and gap <= budget

    Args:
        model: Network model
        solution: Critical reference
        d: Maximal occupation per gapless neuron
        gap_budget: Energy window above the reference
        lazy: Skip the eager count and enumerate on demand
        config: Settings providing ``enumeration_limit``

    Returns:
        PatternLibrary
    """
    config = get_config(config)
    if gap_budget < 0:
        raise InvalidInputError(f"Gap budget must be >= 0, got {gap_budget}")

    total = pattern_count(solution.m, d)
    w = _gapless_weights(model, solution)
    worst_case_gap = float(d * d * w.sum())

    library = PatternLibrary(
        reference=solution,
        cap=int(d),
        gap_budget=float(gap_budget),
        closed_form=total,
        worst_case_gap=worst_case_gap,
        lazy=lazy,
        _weights=w,
    )
    if lazy:
        return library

    if total > config.enumeration_limit:
        raise EnumerationLimitError(
            f"(d+1)^m = {total} candidate patterns exceed the enumeration limit "
            f"{config.enumeration_limit}; request a lazy library"
        )

    if library.bound_holds:
        library.count = total
    else:
        library.count = _count_eager(w, int(d), _budget_limit(gap_budget, worst_case_gap))

    logger.debug(f"Enumerated {library.count} of {total} patterns (d={d}, budget={gap_budget:.6g})")
    return library


def _max_cap(total_weight: float, gap_budget: float) -> int:
    """Largest integer d with d^2 * total_weight <= gap_budget"""
    d = int(math.floor(math.sqrt(gap_budget / total_weight)))
    while (d + 1) ** 2 * total_weight <= gap_budget:
        d += 1
    while d > 0 and d * d * total_weight > gap_budget:
        d -= 1
    return d


def guaranteed_cap(model: NetworkModel, solution: CriticalSolution, gap_budget: float) -> Dict[str, Any]:
    """
    Largest d such that every pattern with y_j <= d fits the budget

    Uses the worst-case bound d^2 sum_{j,k} W_jk <= budget.

    Returns:
        {"d": int or None (unbounded), "patterns": (d+1)^m or None}
    """
    if gap_budget < 0:
        raise InvalidInputError(f"Gap budget must be >= 0, got {gap_budget}")
    total_weight = float(_gapless_weights(model, solution).sum())
    if total_weight == 0:
        return {"d": None, "patterns": None}
    d = _max_cap(total_weight, gap_budget)
    return {"d": d, "patterns": pattern_count(solution.m, d)}


def uniform_capacity(n: int, g: float, gap_budget: float = 1.0) -> Dict[str, Any]:
    """
    Guaranteed capacity of a uniform network with one neuron at 1/g

    The n-1 gapless neurons carry sum W = (g/2)(n-1)(n-2).

    Returns:
        {"m": n-1, "d": guaranteed cap, "patterns": (d+1)^(n-1)}
    """
    if n < 3:
        raise InvalidInputError(f"Uniform capacity needs n >= 3, got {n}")
    if g <= 0:
        raise InvalidInputError(f"Coupling g must be positive, got {g}")
    m = n - 1
    d = _max_cap(0.5 * g * m * (m - 1), gap_budget)
    return {"m": m, "d": d, "patterns": pattern_count(m, d)}


def capacity_table(
    model: NetworkModel,
    solution: CriticalSolution,
    ds: Sequence[int],
    budgets: Sequence[float],
    config: Optional[Config] = None,
) -> List[Dict[str, Any]]:
    """Enumerated counts beside the closed form for a grid of (d, budget)"""
    config = get_config(config)
    rows = []
    for d in ds:
        for budget in budgets:
            total = pattern_count(solution.m, d)
            if total > config.enumeration_limit:
                w = _gapless_weights(model, solution)
                worst = float(d * d * w.sum())
                count = total if worst <= budget else None
                rows.append({"d": int(d), "budget": float(budget), "count": count,
                             "closed_form": total, "worst_case_gap": worst})
                continue
            library = enumerate_patterns(model, solution, d, budget, config=config)
            rows.append({
                "d": int(d),
                "budget": float(budget),
                "count": library.count,
                "closed_form": total,
                "worst_case_gap": library.worst_case_gap,
            })
    return rows
