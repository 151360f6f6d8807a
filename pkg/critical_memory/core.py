"""
Core Critical-Memory Toolkit

This module contains the CriticalMemoryToolkit class that ties the analysis,
dynamics and classical-packing components into the reports the command line
emits.
"""

from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from .coherent import Packing, pack_patterns, pack_sweep
from .config import Config
from .critical import (
    CriticalSolution,
    capacity_table,
    gap_between,
    guaranteed_cap,
    pattern_count,
    search_critical_splits,
    solve_critical_split,
)
from .dynamics import (
    EvolutionResult,
    RunSetup,
    analytic_response_critical,
    default_times,
    evolve_exact,
    evolve_meanfield,
    fit_oscillation,
    ground_frequency,
    ground_peak_fraction,
    peak_ratio,
    prepare_run,
    rabi_period,
    recall_fidelity,
)
from .errors import InvalidInputError
from .network import NetworkModel, bundled_model
from .utils.logger import setup_logging

ENGINES = ("exact", "meanfield")


class CriticalMemoryToolkit:
    """
    Main entry point of the critical-memory toolkit

    Holds one configuration and runs the analysis, evolution, comparison and
    packing tasks against it.
    """

    def __init__(self, config_path: Optional[str] = None, config: Optional[Config] = None):
        """
        Initialize the toolkit

        Args:
            config_path: Path to a configuration file (.json or .py)
            config: Configuration object (if not using config_path)
        """
        if config is not None:
            self.config = config
        elif config_path is not None:
            self.config = Config.from_file(config_path)
        else:
            self.config = Config()

        setup_logging(level=self.config.log_level, log_file=self.config.log_file)
        logger.debug(f"Toolkit limits: {self.config.get_limits()}")

    def analyze(
        self,
        model: NetworkModel,
        gapless_set: Optional[Sequence[int]] = None,
        max_excited: int = 1,
        ds: Sequence[int] = (1, 2, 3),
        budgets: Sequence[float] = (1.0,),
    ) -> Dict[str, Any]:
        """
        Critical splits and pattern capacity of a model

        Args:
            model: Network model
            gapless_set: Split to solve; searched exhaustively when omitted
            max_excited: Largest excited set tried by the search
            ds: Occupation caps for the capacity table
            budgets: Gap budgets for the capacity table

        Returns:
            Analysis report
        """
        try:
            logger.info(f"Analyzing model with {model.n} neurons")

            if gapless_set is not None:
                solutions = [solve_critical_split(model, gapless_set, config=self.config)]
            else:
                solutions = search_critical_splits(model, max_excited, config=self.config)

            report: Dict[str, Any] = {
                "n": model.n,
                "thresholds": model.thresholds,
                "splits": [s.to_dict() for s in solutions],
                "limits": self.config.get_limits(),
            }
            if solutions:
                best = solutions[0]
                report["capacity"] = capacity_table(model, best, ds, budgets, config=self.config)
                report["guaranteed"] = {
                    str(budget): guaranteed_cap(model, best, budget) for budget in budgets
                }

            logger.info(f"Analysis found {len(solutions)} critical splits")
            return report

        except Exception as e:
            logger.error(f"Failed to analyze model: {e}")
            raise

    def _times(self, q: float, times: Optional[Sequence[float]]) -> np.ndarray:
        if times is not None:
            return np.asarray(times, dtype=float)
        return default_times(q, self.config.time_points)

    def evolve(
        self,
        model: NetworkModel,
        stimulus: Sequence[float],
        q: float,
        initial: str = "critical",
        engine: str = "exact",
        excited_mode: int = 0,
        times: Optional[Sequence[float]] = None,
        cap: Optional[int] = None,
        number_input: bool = False,
    ) -> Dict[str, Any]:
        """
        Evolve a recall run with the exact or mean-field engine

        Returns:
            {"result": EvolutionResult, "setup": RunSetup, "stimulus": per-output stimulus, "summary": dict}
        """
        try:
            if engine not in ENGINES:
                raise InvalidInputError(f"Unknown engine '{engine}', expected one of {ENGINES}")

            setup = prepare_run(
                model, stimulus, initial=initial, excited_mode=excited_mode, cap=cap,
                coupling=q, number_input=number_input, config=self.config,
            )
            grid = self._times(q, times)

            if engine == "exact":
                result = evolve_exact(setup.model, setup.basis, setup.state, grid, config=self.config)
                pattern = setup.stimulus
            else:
                result = evolve_meanfield(setup.full_model, setup.classical, grid, config=self.config)
                pattern = setup.full_stimulus

            summary = {**result.summary(), **setup.diagnostics(), "q": q}
            if np.any(pattern > 0):
                summary["final_fidelity"] = recall_fidelity(result.y_expect[-1], pattern)
                summary["peak_ratio"] = peak_ratio(result.y_expect, pattern)

            logger.info(f"{engine} {initial} run finished after {result.steps} steps")
            return {"result": result, "setup": setup, "stimulus": pattern, "summary": summary}

        except Exception as e:
            logger.error(f"Failed to evolve model: {e}")
            raise

    def compare(
        self,
        model: NetworkModel,
        stimulus: Sequence[float],
        q: float,
        excited_mode: int = 0,
        cap: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Critical versus unexcited response to the same stimulus

        The critical run covers one Rabi period; the ground run covers two
        periods of its own faster, suppressed oscillation.

        Returns:
            {"critical": EvolutionResult, "ground": EvolutionResult, "summary": dict}
        """
        try:
            logger.info(f"Comparing critical and ground responses at q={q}")

            critical = self.evolve(model, stimulus, q, initial="critical", excited_mode=excited_mode, cap=cap)
            ground_setup: RunSetup = prepare_run(
                model, critical["setup"].full_stimulus, initial="ground", cap=cap, coupling=q, config=self.config
            )

            stimulated = ground_setup.stimulus > 0
            if not np.any(stimulated):
                raise InvalidInputError("Comparison needs a nonzero stimulus")
            input_gap = ground_setup.model.input_layer.input_gap
            gap = float(np.mean(ground_setup.model.thresholds[stimulated])) - input_gap

            omega = ground_frequency(q, gap)
            ground_times = np.linspace(0.0, 4.0 * np.pi / omega, self.config.time_points)
            ground = evolve_exact(
                ground_setup.model, ground_setup.basis, ground_setup.state, ground_times, config=self.config
            )

            x = ground_setup.stimulus
            ratios = np.mean(ground.y_expect[:, stimulated] / x[stimulated], axis=1)
            amplitude, frequency = fit_oscillation(ground.times, ratios)

            critical_result: EvolutionResult = critical["result"]
            expected = analytic_response_critical(critical["stimulus"], q, critical_result.times)
            reference = critical["stimulus"] > 0
            deviation = float(np.max(
                np.abs(critical_result.y_expect[:, reference] - expected[:, reference]) / critical["stimulus"][reference]
            ))

            summary = {
                "q": q,
                "gap": gap,
                "rabi_period": rabi_period(q),
                "critical_fidelity": recall_fidelity(critical_result.y_expect[-1], critical["stimulus"]),
                "critical_max_deviation": deviation,
                "peak_ratio": peak_ratio(ground.y_expect, x),
                "peak_ratio_fit": amplitude,
                "expected_peak_ratio": ground_peak_fraction(q, gap),
                "ground_frequency_fit": frequency,
                "expected_ground_frequency": omega,
            }
            logger.info(f"Comparison: peak ratio {summary['peak_ratio']:.6g} vs {summary['expected_peak_ratio']:.6g}")
            return {"critical": critical_result, "ground": ground, "summary": summary,
                    "critical_stimulus": critical["stimulus"], "ground_stimulus": x}

        except Exception as e:
            logger.error(f"Failed to compare responses: {e}")
            raise

    def pack(
        self,
        g: float,
        modes: int,
        budget: float,
        threshold: Optional[float] = None,
        kappa: Optional[float] = None,
    ) -> Packing:
        """Count distinguishable classical patterns within the gap budget"""
        try:
            return pack_patterns(g, modes, budget, threshold, kappa, config=self.config)
        except Exception as e:
            logger.error(f"Failed to pack patterns: {e}")
            raise

    def pack_sweep(
        self,
        gs: Sequence[float],
        modes: int,
        budget: float,
        threshold: Optional[float] = None,
        kappa: Optional[float] = None,
    ) -> pd.DataFrame:
        """Packing count versus coupling"""
        try:
            return pack_sweep(gs, modes, budget, threshold, kappa, config=self.config)
        except Exception as e:
            logger.error(f"Failed to run packing sweep: {e}")
            raise

    def paper_example(self) -> Dict[str, Any]:
        """
        Worked six-neuron example: neurons 0-2 excited, 3-5 gapless

        Returns:
            Report with the excitation levels, effective gaps and capacity lines
        """
        try:
            model = bundled_model("matrix_g")
            solution: CriticalSolution = solve_critical_split(model, [3, 4, 5], config=self.config)

            m = solution.m
            scale = float(np.max(np.abs(model.thresholds)))
            budgets = [1.0, float(np.min(model.thresholds))]
            guarantees = {str(b): guaranteed_cap(model, solution, b) for b in budgets}

            report = {
                "model": "matrix_g",
                "excited_set": list(solution.excited_set),
                "gapless_set": list(solution.gapless_set),
                "xi": solution.xi,
                "residual": solution.residual,
                "relative_residual": solution.residual / scale,
                "effective_gaps": solution.effective_gaps,
                "unit_pattern_gap": gap_between(model, solution, np.ones(m)),
                "capacity": f"(d+1)^{m} patterns for gapless set of size {m}",
                "patterns_at_guaranteed_cap": guarantees,
                "patterns_d3": pattern_count(m, 3),
            }
            logger.info("Worked example reproduced")
            return report

        except Exception as e:
            logger.error(f"Failed to run the worked example: {e}")
            raise
