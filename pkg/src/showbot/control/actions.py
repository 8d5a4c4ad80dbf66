"""Action transform and the 50 Hz to 600 Hz bridge.

Policy actions map affinely onto joint setpoints (0 = nominal pose, 1 = one
expected range away), clipped to a maximum deviation around the measured
position so the drive can always realize its peak torque. Between decision
ticks the setpoints follow a first-order hold smoothed by a discrete
first-order low-pass with a 37.5 Hz cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DECISION_RATE = 50.0    # Hz
ACTUATION_RATE = 600.0  # Hz
INNER_STEPS = int(round(ACTUATION_RATE / DECISION_RATE))
FILTER_CUTOFF = 37.5    # Hz


def action_to_setpoints(action: np.ndarray, nominal: np.ndarray,
                        scale: np.ndarray, measured_q: np.ndarray,
                        max_deviation: np.ndarray) -> np.ndarray:
    """Affine action map clipped around the measured joint positions."""
    action = np.asarray(action, dtype=float)
    target = np.asarray(nominal, dtype=float) + np.asarray(scale, dtype=float) * action
    measured_q = np.asarray(measured_q, dtype=float)
    dev = np.asarray(max_deviation, dtype=float)
    return np.clip(target, measured_q - dev, measured_q + dev)


def filter_alpha(cutoff_hz: float = FILTER_CUTOFF, rate_hz: float = ACTUATION_RATE) -> float:
    """Pole-matched discrete first-order smoothing coefficient."""
    return 1.0 - float(np.exp(-2.0 * np.pi * cutoff_hz / rate_hz))


@dataclass
class ActionPipeline:
    """Per-joint first-order hold plus low-pass filter state."""

    n_joints: int = 14
    inner_steps: int = INNER_STEPS
    cutoff_hz: float = FILTER_CUTOFF
    rate_hz: float = ACTUATION_RATE
    prev_setpoints: np.ndarray = field(init=False)
    setpoints: np.ndarray = field(init=False)
    filtered: np.ndarray = field(init=False)

    def __post_init__(self):
        self.alpha = filter_alpha(self.cutoff_hz, self.rate_hz)
        self.reset(np.zeros(self.n_joints))

    def reset(self, q0: np.ndarray):
        """Initialize hold and filter state from the measured joint positions."""
        q0 = np.asarray(q0, dtype=float)
        self.prev_setpoints = q0.copy()
        self.setpoints = q0.copy()
        self.filtered = q0.copy()

    def push(self, new_setpoints: np.ndarray):
        """Install the next decision-tick setpoints."""
        self.prev_setpoints = self.setpoints
        self.setpoints = np.asarray(new_setpoints, dtype=float).copy()

    def tick(self, k: int) -> np.ndarray:
        """Actuation tick k in [1, inner_steps]: interpolate then filter."""
        frac = k / self.inner_steps
        held = self.prev_setpoints + (self.setpoints - self.prev_setpoints) * frac
        self.filtered = self.filtered + self.alpha * (held - self.filtered)
        return self.filtered.copy()
