"""Layer blending: ramp clocks, command interpolation, rate limiting.

Show channels ramp over T_beta, body channels over the slower T_alpha, so
faces blend faster than bodies. A rate limiter on the composited output
keeps the stream Lipschitz under arbitrary trigger timing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import quat_boxminus, quat_mul, quat_normalize, quat_rotvec, quat_slerp
from ..model.state import RobotConfig
from .show import ShowFunctionState

T_BETA = 0.1   # s, show-function ramp
T_ALPHA = 0.35  # s, body ramp


@dataclass
class AnimationCommand:
    """Extended animation target: show functions plus robot configuration."""

    show: ShowFunctionState
    config: RobotConfig

    def copy(self) -> "AnimationCommand":
        return AnimationCommand(self.show.copy(), self.config.copy())


def blend_ratios(t: float, duration: float, t_beta: float = T_BETA,
                 t_alpha: float = T_ALPHA) -> tuple[float, float]:
    """Ramp-in/plateau/ramp-out weights at playback time t."""
    if duration <= 0.0:
        return 0.0, 0.0
    beta = min(t / t_beta, (duration - t) / t_beta, 1.0)
    alpha = min(t / t_alpha, (duration - t) / t_alpha, 1.0)
    return max(beta, 0.0), max(alpha, 0.0)


def blend(background: AnimationCommand, triggered: AnimationCommand,
          beta: float, alpha: float) -> AnimationCommand:
    """Composite one triggered command on top of the background.

    Show functions mix linearly with weight beta; the configuration uses
    linear interpolation for position and joints and slerp for the torso
    orientation, with weight alpha.
    """
    nu = ((1.0 - beta) * background.show.to_vector()
          + beta * triggered.show.to_vector())
    bg_c, tr_c = background.config, triggered.config
    config = RobotConfig(
        position=(1.0 - alpha) * bg_c.position + alpha * tr_c.position,
        orientation=quat_slerp(bg_c.orientation, tr_c.orientation, alpha),
        q=(1.0 - alpha) * bg_c.q + alpha * tr_c.q,
    )
    return AnimationCommand(show=ShowFunctionState.from_vector(nu), config=config)


@dataclass
class RateLimits:
    show: float = 25.0      # show units/s (antennas rad/s, fractions 1/s)
    position: float = 1.5   # m/s
    joints: float = 8.0     # rad/s
    rotation: float = 6.0   # rad/s


@dataclass
class CommandRateLimiter:
    """Slew limiter over animation commands; transparent below the limits."""

    limits: RateLimits = field(default_factory=RateLimits)
    _prev: AnimationCommand | None = None

    def reset(self):
        self._prev = None

    def step(self, target: AnimationCommand, dt: float) -> AnimationCommand:
        if self._prev is None or dt <= 0.0:
            self._prev = target.copy()
            return target

        prev = self._prev

        def slew(prev_v, target_v, rate):
            delta = np.asarray(target_v, dtype=float) - prev_v
            return prev_v + np.clip(delta, -rate * dt, rate * dt)

        show = ShowFunctionState.from_vector(
            slew(prev.show.to_vector(), target.show.to_vector(), self.limits.show))
        position = slew(prev.config.position, target.config.position,
                        self.limits.position)
        q = slew(prev.config.q, target.config.q, self.limits.joints)
        angle = float(np.linalg.norm(
            quat_boxminus(target.config.orientation, prev.config.orientation)))
        max_step = self.limits.rotation * dt
        if angle <= max_step or angle < 1e-12:
            quat = target.config.orientation
        else:
            quat = quat_slerp(prev.config.orientation, target.config.orientation,
                              max_step / angle)
        out = AnimationCommand(show=show,
                               config=RobotConfig(position=position, orientation=quat, q=q))
        self._prev = out.copy()
        return out
