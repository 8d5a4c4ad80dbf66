"""Drive-level torque and measurement model.

All functions are vectorized over numpy arrays so the 14 joints of one drive
type can be stepped in a single call.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import HEAD, QUASI_DIRECT, ActuatorDraw, ActuatorParams


def pd_torque(params: ActuatorParams, draw: ActuatorDraw, setpoint, q, qdot,
              prev_error=None, dt: float | None = None, gain_scale: float = 1.0):
    """Motor torque demand before limits and friction.

    Quasi-direct drives damp the measured velocity; the head drives instead
    differentiate the setpoint error numerically (backward difference over
    ``dt``; a missing ``prev_error`` means the first tick, derivative zero).
    ``gain_scale`` raises the position gain (motion-stop freeze). Returns
    ``(tau_m, error)`` so callers can carry the error to the next tick.
    """
    error = np.asarray(setpoint, dtype=float) - (np.asarray(q, dtype=float) + draw.eps_q)
    k_p = params.k_p * gain_scale
    if params.pd_variant == QUASI_DIRECT:
        tau_m = k_p * error - params.k_d * np.asarray(qdot, dtype=float)
    elif params.pd_variant == HEAD:
        if prev_error is None:
            d_error = np.zeros_like(error)
        else:
            if dt is None or dt <= 0.0:
                raise ValueError("head variant needs dt > 0")
            d_error = (error - prev_error) / dt
        tau_m = k_p * error + params.k_d * d_error
    else:  # pragma: no cover - rejected at construction
        raise ValueError(params.pd_variant)
    return tau_m, error


def torque_limits(params: ActuatorParams, qdot):
    """Velocity-dependent torque interval (lo, hi).

    Driving torque ramps down linearly from ``tau_max`` at ``qdot_tau_max``
    to zero at ``qdot_max``; braking torque keeps the constant limit.
    """
    qdot = np.asarray(qdot, dtype=float)
    span = params.qdot_max - params.qdot_tau_max
    ramp = params.tau_max * (params.qdot_max - np.abs(qdot)) / span
    drive = np.clip(np.minimum(params.tau_max, ramp), 0.0, params.tau_max)
    hi = np.where(qdot >= 0.0, drive, params.tau_max)
    lo = np.where(qdot >= 0.0, -params.tau_max, -drive)
    if np.ndim(qdot) == 0:
        return float(lo), float(hi)
    return lo, hi


def friction(params: ActuatorParams, qdot):
    """Smoothed static plus viscous joint friction (odd in velocity)."""
    qdot = np.asarray(qdot, dtype=float)
    out = params.mu_s * np.tanh(qdot / params.qdot_s) + params.mu_d * qdot
    return float(out) if np.ndim(qdot) == 0 else out


def joint_torque(params: ActuatorParams, tau_m, qdot):
    """Net joint torque: limit-clamped motor torque minus friction."""
    lo, hi = torque_limits(params, qdot)
    out = np.clip(np.asarray(tau_m, dtype=float), lo, hi) - friction(params, qdot)
    return float(out) if np.ndim(tau_m) == 0 and np.ndim(qdot) == 0 else out


def measured_position(params: ActuatorParams, draw: ActuatorDraw, q, tau_m, qdot,
                      rng: np.random.Generator):
    """Encoder reading: offset, torque-side backlash, velocity-scaled noise."""
    q = np.asarray(q, dtype=float)
    tau_m = np.asarray(tau_m, dtype=float)
    sigma = params.sigma_q0 + params.sigma_q1 * np.abs(np.asarray(qdot, dtype=float))
    noise = rng.normal(0.0, 1.0, size=np.broadcast(q, tau_m, sigma).shape) * sigma
    out = q + draw.eps_q + 0.5 * draw.backlash * np.tanh(tau_m / params.tau_b) + noise
    return float(out) if np.ndim(q) == 0 and np.ndim(tau_m) == 0 else out


@dataclass
class Actuator:
    """One joint's drive: parameters, episode draw, and tick state."""

    params: ActuatorParams
    draw: ActuatorDraw = field(default_factory=ActuatorDraw.nominal)
    prev_error: np.ndarray | float | None = None

    def reset(self, rng: np.random.Generator | None = None, randomize: bool = True):
        from .params import sample_draw
        if randomize and rng is not None:
            self.draw = sample_draw(self.params, rng)
        else:
            self.draw = ActuatorDraw.nominal()
        self.prev_error = None

    def step(self, setpoint, q, qdot, dt: float):
        """Advance one tick; returns (tau, tau_m)."""
        tau_m, error = pd_torque(self.params, self.draw, setpoint, q, qdot,
                                 prev_error=self.prev_error, dt=dt)
        self.prev_error = error
        return joint_torque(self.params, tau_m, qdot), tau_m

    def measure(self, q, tau_m, qdot, rng: np.random.Generator):
        return measured_position(self.params, self.draw, q, tau_m, qdot, rng)

    @property
    def inertia(self) -> float:
        return self.params.armature * self.draw.armature_scale
