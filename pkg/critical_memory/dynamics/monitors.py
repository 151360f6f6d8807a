"""
Conservation Monitor for Exact Evolution

This module watches the quantities the Hamiltonian conserves (norm, energy
and per-channel numbers) while a trajectory is propagated, raising on hard
norm violations and recording alerts for the softer checks.
"""

from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..config import Config, get_config
from ..errors import NormDriftError
from ..fock import QuantumState, SparseOperator

ALERT_HISTORY = 50
METRIC_HISTORY = 100


class ConservationMonitor:
    """
    Tracks drift of conserved quantities along a trajectory

    Drift limits are per unit time; a sample at time t is compared with
    limit * max(t, 1).
    """

    def __init__(
        self,
        config: Optional[Config] = None,
        hamiltonian: Optional[SparseOperator] = None,
        channel_operators: Sequence[SparseOperator] = (),
    ):
        """
        Initialize the conservation monitor

        Args:
            config: Settings providing ``norm_drift_limit``
            hamiltonian: Energy operator to track, if any
            channel_operators: Conserved channel-number operators
        """
        self.config = get_config(config)
        self.hamiltonian = hamiltonian
        self.channel_operators = list(channel_operators)
        self.limit = self.config.norm_drift_limit
        self.reference: Dict[str, Any] = {}
        self.history: List[Dict[str, Any]] = []
        self.alerts: List[Dict[str, Any]] = []

    def start(self, state: QuantumState):
        """Record the reference values at the start of a run"""
        self.reference = {
            "norm": state.norm_sq(),
            "energy": self._energy(state),
            "channels": self._channels(state),
        }
        self.history.clear()
        logger.debug(f"Conservation monitor reference: {self.reference}")

    def _energy(self, state: QuantumState) -> Optional[float]:
        if self.hamiltonian is None:
            return None
        return state.expectation(self.hamiltonian).real

    def _channels(self, state: QuantumState) -> np.ndarray:
        return np.array([state.expectation(op).real for op in self.channel_operators])

    def check(self, time: float, state: QuantumState) -> Dict[str, Any]:
        """
        Compare ``state`` at ``time`` with the reference

        Returns:
            Drift metrics for this sample

        Raises:
            NormDriftError: Norm drift above the per-unit-time limit
        """
        if not self.reference:
            self.start(state)

        allowed = self.limit * max(time, 1.0)
        metrics: Dict[str, Any] = {"time": time}

        metrics["norm_drift"] = abs(state.norm_sq() - self.reference["norm"])
        if metrics["norm_drift"] > allowed:
            self._add_alert("NORM_DRIFT", f"t={time:.6g} drift={metrics['norm_drift']:.3e} > {allowed:.3e}")
            raise NormDriftError(
                f"Norm drift {metrics['norm_drift']:.3e} at t={time:.6g} exceeds {allowed:.3e} "
                f"({self.limit:.1e} per unit time)",
                time=time,
                drift=metrics["norm_drift"],
            )

        energy = self._energy(state)
        if energy is not None:
            scale = max(1.0, abs(self.reference["energy"]))
            metrics["energy"] = energy
            metrics["energy_drift"] = abs(energy - self.reference["energy"]) / scale
            if metrics["energy_drift"] > allowed:
                self._add_alert("ENERGY_DRIFT", f"t={time:.6g} relative drift={metrics['energy_drift']:.3e}")

        if self.channel_operators:
            channels = self._channels(state)
            metrics["channels"] = channels
            metrics["channel_drift"] = float(np.max(np.abs(channels - self.reference["channels"])))
            if metrics["channel_drift"] > allowed:
                self._add_alert("CHANNEL_DRIFT", f"t={time:.6g} drift={metrics['channel_drift']:.3e}")

        self.history.append(metrics)
        if len(self.history) > METRIC_HISTORY:
            self.history = self.history[-METRIC_HISTORY:]
        return metrics

    def _add_alert(self, alert_type: str, message: str):
        self.alerts.append({"type": alert_type, "message": message})
        if len(self.alerts) > ALERT_HISTORY:
            self.alerts = self.alerts[-ALERT_HISTORY:]
        logger.warning(f"Conservation alert: {alert_type} - {message}")

    def get_alerts(self, alert_type: Optional[str] = None) -> List[Dict[str, Any]]:
        if alert_type:
            return [alert for alert in self.alerts if alert["type"] == alert_type]
        return self.alerts.copy()

    def clear_alerts(self):
        self.alerts.clear()
