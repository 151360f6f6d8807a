"""
Critical-state solver

A split assigns every neuron either to the excited set (occupation xi_alpha)
or to the gapless set. The split is critical when

    eps_j - 2 sum_alpha W_j,alpha xi_alpha = 0    for every gapless j

with xi_alpha >= 0, which makes the gapless neurons' effective thresholds vanish.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize, nnls

from ..config import Config, get_config
from ..errors import InfeasibleSplitError, InvalidInputError, SearchLimitError
from ..network import NetworkModel


@dataclass(frozen=True, eq=False)
class CriticalSolution:
    """
    Solved split of the neurons into excited and gapless sets

    Attributes:
        excited_set: Excited mode indices, ascending
        gapless_set: Gapless mode indices, ascending
        xi: Excitation level per excited mode
        residual: max over gapless j of |eps_j - 2 sum_alpha W_j,alpha xi_alpha|
        effective_gaps: Effective threshold per gapless mode
        excited_gaps: Effective threshold per excited mode (diagnostic)
        degeneracy: Dimension of the solution set (0 when xi is unique)
        integer: True when xi was rounded to integers and re-verified
    """

    excited_set: Tuple[int, ...]
    gapless_set: Tuple[int, ...]
    xi: np.ndarray
    residual: float
    effective_gaps: np.ndarray
    excited_gaps: np.ndarray
    degeneracy: int = 0
    integer: bool = False

    @property
    def n(self) -> int:
        return len(self.excited_set) + len(self.gapless_set)

    @property
    def m(self) -> int:
        """Number of gapless modes"""
        return len(self.gapless_set)

    def occupations(self, gapless_values: Optional[Sequence[float]] = None) -> np.ndarray:
        """Full occupation vector: xi on the excited set, ``gapless_values`` (or 0) elsewhere"""
        occ = np.zeros(self.n)
        occ[list(self.excited_set)] = self.xi
        if gapless_values is not None:
            values = np.asarray(gapless_values, dtype=float)
            if values.shape != (self.m,):
                raise InvalidInputError(f"{values.size} gapless values given for {self.m} gapless modes")
            occ[list(self.gapless_set)] = values
        return occ

    def frozen_values(self) -> Dict[int, float]:
        return {mode: float(v) for mode, v in zip(self.excited_set, self.xi)}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "excited_set": list(self.excited_set),
            "gapless_set": list(self.gapless_set),
            "xi": self.xi.tolist(),
            "residual": self.residual,
            "effective_gaps": self.effective_gaps.tolist(),
            "excited_gaps": self.excited_gaps.tolist(),
            "degeneracy": self.degeneracy,
            "integer": self.integer,
        }


def effective_thresholds(model: NetworkModel, y: Sequence[float]) -> np.ndarray:
    """eps_j - 2 sum_{k != j} W_jk y_k for every mode"""
    occ = np.asarray(y, dtype=float)
    if occ.shape != (model.n,):
        raise InvalidInputError(f"Occupation vector has length {occ.size}, expected {model.n}")
    if np.any(occ < 0):
        raise InvalidInputError("Occupations must be nonnegative")
    return model.thresholds - 2.0 * model.weights @ occ


def effective_threshold(model: NetworkModel, y: Sequence[float], mode: int) -> float:
    """
    Threshold of ``mode`` lowered by its excitatory couplings to the occupations ``y``

    The weight diagonal is zero, so the mode's own occupation does not enter.
    """
    if not 0 <= mode < model.n:
        raise InvalidInputError(f"Mode {mode} out of range [0, {model.n - 1}]")
    return float(effective_thresholds(model, y)[mode])


def _min_norm_nonnegative(a: np.ndarray, target: np.ndarray, start: np.ndarray) -> np.ndarray:
    """Minimum-norm x >= 0 with a @ x = target, starting from a feasible ``start``"""
    candidate = np.linalg.pinv(a) @ target
    if np.all(candidate >= 0) and np.allclose(a @ candidate, target, rtol=1e-12, atol=0):
        return candidate

    # nondimensionalize with a single scalar so the minimum-norm point is unchanged
    scale = max(float(np.max(np.abs(start))), 1e-300)
    a_hat = a * scale
    result = minimize(
        lambda u: 0.5 * float(u @ u),
        start / scale,
        jac=lambda u: u,
        method="SLSQP",
        bounds=[(0.0, None)] * a.shape[1],
        constraints=[{"type": "eq", "fun": lambda u: a_hat @ u - target, "jac": lambda u: a_hat}],
        options={"ftol": 1e-15, "maxiter": 500},
    )
    if not result.success:
        logger.debug(f"Minimum-norm refinement did not converge: {result.message}")
        return start
    return np.clip(result.x, 0.0, None) * scale


def solve_critical_split(
    model: NetworkModel,
    gapless_set: Iterable[int],
    config: Optional[Config] = None,
    tolerance: Optional[float] = None,
    integer: bool = False,
) -> CriticalSolution:
    """
    Solve for the excitation levels that make ``gapless_set`` gapless

    Nonnegative least squares on 2 W[gapless, excited] xi = eps[gapless].
    Underdetermined splits return the minimum-norm nonnegative solution and
    report the degeneracy.

    Args:
        model: Network model
        gapless_set: Modes that must become gapless
        config: Settings providing ``critical_tolerance``
        tolerance: Relative tolerance overriding the configured one
        integer: Round xi to integers and re-verify the residual

    Returns:
        CriticalSolution

    Raises:
        InfeasibleSplitError: Residual above tolerance * max |eps|
    """
    config = get_config(config)
    tol = config.critical_tolerance if tolerance is None else tolerance

    gapless = tuple(sorted(set(int(j) for j in gapless_set)))
    if not gapless:
        raise InvalidInputError("The gapless set must be nonempty")
    if any(not 0 <= j < model.n for j in gapless):
        raise InvalidInputError(f"Gapless set {gapless} has modes outside [0, {model.n - 1}]")
    excited = tuple(j for j in range(model.n) if j not in gapless)
    if not excited:
        raise InvalidInputError("The excited set is empty; the gapless set must be a proper subset")

    a = 2.0 * model.weights[np.ix_(gapless, excited)]
    b = model.thresholds[list(gapless)]

    col_norms = np.linalg.norm(a, axis=0)
    active = col_norms > 0
    xi = np.zeros(len(excited))
    if np.any(active):
        z, _ = nnls(a[:, active] / col_norms[active], b)
        xi[active] = z / col_norms[active]

    rank = int(np.linalg.matrix_rank(a)) if np.any(active) else 0
    degeneracy = len(excited) - rank
    if degeneracy > 0 and np.any(active):
        xi = _min_norm_nonnegative(a, a @ xi, xi)

    if integer:
        xi = np.round(xi)

    residual = float(np.max(np.abs(b - a @ xi)))
    scale = float(np.max(np.abs(model.thresholds)))
    if residual > tol * scale:
        raise InfeasibleSplitError(
            f"No critical state for this split: excited={list(excited)} gapless={list(gapless)} "
            f"residual {residual:.3e} > {tol:.1e} x {scale:.6g}",
            residual=residual,
        )

    occ = np.zeros(model.n)
    occ[list(excited)] = xi
    gaps = effective_thresholds(model, occ)

    if degeneracy > 0:
        logger.debug(f"Split excited={list(excited)} is degenerate, solution-set dimension {degeneracy}")

    return CriticalSolution(
        excited_set=excited,
        gapless_set=gapless,
        xi=xi,
        residual=residual,
        effective_gaps=gaps[list(gapless)],
        excited_gaps=gaps[list(excited)],
        degeneracy=degeneracy,
        integer=integer,
    )


def _try_split(model: NetworkModel, excited: Tuple[int, ...], config: Config) -> Optional[CriticalSolution]:
    gapless = [j for j in range(model.n) if j not in excited]
    try:
        return solve_critical_split(model, gapless, config=config)
    except InfeasibleSplitError:
        return None


def search_critical_splits(
    model: NetworkModel,
    max_excited: int,
    config: Optional[Config] = None,
) -> List[CriticalSolution]:
    """
    Exhaustively test every split with at most ``max_excited`` excited neurons

    Returns:
        Feasible solutions ordered by excited-set size, residual, then excited set
    """
    config = get_config(config)

    if model.n > config.search_mode_limit:
        raise SearchLimitError(
            f"Exhaustive split search is limited to {config.search_mode_limit} neurons, "
            f"model has {model.n}; pass an explicit gapless set instead"
        )
    if not 1 <= max_excited <= model.n - 1:
        raise InvalidInputError(f"max_excited must lie in [1, {model.n - 1}], got {max_excited}")

    candidates = [
        excited
        for size in range(1, max_excited + 1)
        for excited in combinations(range(model.n), size)
    ]
    logger.info(f"Searching {len(candidates)} candidate splits on {model.n} neurons")

    if config.max_workers > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            results = list(pool.map(lambda e: _try_split(model, e, config), candidates))
    else:
        results = [_try_split(model, e, config) for e in candidates]

    solutions = [s for s in results if s is not None]
    solutions.sort(key=lambda s: (len(s.excited_set), s.residual, s.excited_set))

    logger.info(f"Found {len(solutions)} critical splits")
    return solutions
