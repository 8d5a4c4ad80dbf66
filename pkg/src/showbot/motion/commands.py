"""Policy command tuples and their configured ranges."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

COMMANDS_SCHEMA = "showbot-commands/1"


@dataclass
class PerpetualCommand:
    """Standing control input: head offsets plus absolute torso pose."""

    dh_head: float = 0.0
    dtheta_head: np.ndarray = field(default_factory=lambda: np.zeros(3))  # yaw, pitch, roll
    h_torso: float = 0.32
    theta_torso: np.ndarray = field(default_factory=lambda: np.zeros(3))  # ZYX Euler

    def __post_init__(self):
        self.dtheta_head = np.asarray(self.dtheta_head, dtype=float).copy()
        self.theta_torso = np.asarray(self.theta_torso, dtype=float).copy()

    def copy(self) -> "PerpetualCommand":
        return PerpetualCommand(self.dh_head, self.dtheta_head, self.h_torso,
                                self.theta_torso)


@dataclass
class PeriodicCommand:
    """Walking control input: head offsets plus path velocities."""

    dh_head: float = 0.0
    dtheta_head: np.ndarray = field(default_factory=lambda: np.zeros(3))
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(2))  # m/s, path frame
    yaw_rate: float = 0.0                                              # rad/s

    def __post_init__(self):
        self.dtheta_head = np.asarray(self.dtheta_head, dtype=float).copy()
        self.velocity = np.asarray(self.velocity, dtype=float).copy()

    def copy(self) -> "PeriodicCommand":
        return PeriodicCommand(self.dh_head, self.dtheta_head, self.velocity,
                               self.yaw_rate)


def _interval(spec, key) -> tuple[float, float]:
    lo, hi = (float(v) for v in spec[key])
    if lo > hi:
        raise ValueError(f"range {key} out of order")
    return lo, hi


class CommandRanges:
    """Configured command box; every command is clamped into it."""

    def __init__(self, spec: dict):
        if spec.get("schema") != COMMANDS_SCHEMA:
            raise ValueError(f"unsupported command schema: {spec.get('schema')!r}")
        perp = spec["perpetual"]
        self.dh_head = _interval(perp, "dh_head")
        self.dtheta_head = np.array([
            _interval(perp, "dtheta_head_yaw"),
            _interval(perp, "dtheta_head_pitch"),
            _interval(perp, "dtheta_head_roll"),
        ])
        self.h_torso = _interval(perp, "h_torso")
        self.theta_torso = np.array([
            _interval(perp, "theta_torso_yaw"),
            _interval(perp, "theta_torso_pitch"),
            _interval(perp, "theta_torso_roll"),
        ])
        peri = spec["periodic"]
        self.vx = _interval(peri, "vx")
        self.vy = _interval(peri, "vy")
        self.wz = _interval(peri, "wz")

    @property
    def v_max(self) -> float:
        return max(abs(self.vx[0]), abs(self.vx[1]))

    @property
    def v_max_xy(self):
        import numpy as _np
        return _np.array([max(abs(self.vx[0]), abs(self.vx[1])),
                          max(abs(self.vy[0]), abs(self.vy[1]))])

    def clamp_perpetual(self, cmd: PerpetualCommand) -> PerpetualCommand:
        return PerpetualCommand(
            dh_head=float(np.clip(cmd.dh_head, *self.dh_head)),
            dtheta_head=np.clip(cmd.dtheta_head, self.dtheta_head[:, 0],
                                self.dtheta_head[:, 1]),
            h_torso=float(np.clip(cmd.h_torso, *self.h_torso)),
            theta_torso=np.clip(cmd.theta_torso, self.theta_torso[:, 0],
                                self.theta_torso[:, 1]),
        )

    def clamp_periodic(self, cmd: PeriodicCommand) -> PeriodicCommand:
        return PeriodicCommand(
            dh_head=float(np.clip(cmd.dh_head, *self.dh_head)),
            dtheta_head=np.clip(cmd.dtheta_head, self.dtheta_head[:, 0],
                                self.dtheta_head[:, 1]),
            velocity=np.array([np.clip(cmd.velocity[0], *self.vx),
                               np.clip(cmd.velocity[1], *self.vy)]),
            yaw_rate=float(np.clip(cmd.yaw_rate, *self.wz)),
        )


def load_ranges(path: str | Path) -> CommandRanges:
    with open(path) as f:
        return CommandRanges(yaml.safe_load(f))


def default_ranges() -> CommandRanges:
    from ..config import data_path
    return load_ranges(data_path("command_ranges.yaml"))
