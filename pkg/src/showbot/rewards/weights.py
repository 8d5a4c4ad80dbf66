"""Reward weights, emphasis windows, and the phase-windowed schedule."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

WEIGHTS_SCHEMA = "showbot-rewards/1"

IMITATION_TERMS = (
    "torso_position_xy", "torso_orientation",
    "linear_velocity_xy", "linear_velocity_z",
    "angular_velocity_xy", "angular_velocity_z",
    "leg_joint_positions", "neck_joint_positions",
    "leg_joint_velocities", "neck_joint_velocities",
    "contact",
)
REGULARIZATION_TERMS = (
    "joint_torques", "joint_accelerations",
    "leg_action_rate", "neck_action_rate",
    "leg_action_acc", "neck_action_acc",
)
ALL_TERMS = IMITATION_TERMS + REGULARIZATION_TERMS + ("survival",)


@dataclass(frozen=True)
class RewardWeights:
    torso_position_xy: float = 1.0
    torso_orientation: float = 1.0
    linear_velocity_xy: float = 1.0
    linear_velocity_z: float = 1.0
    angular_velocity_xy: float = 0.5
    angular_velocity_z: float = 0.5
    leg_joint_positions: float = 15.0
    neck_joint_positions: float = 100.0
    leg_joint_velocities: float = 1.0e-3
    neck_joint_velocities: float = 1.0
    contact: float = 1.0
    joint_torques: float = 1.0e-3
    joint_accelerations: float = 2.5e-6
    leg_action_rate: float = 1.5
    neck_action_rate: float = 5.0
    leg_action_acc: float = 0.45
    neck_action_acc: float = 5.0
    survival: float = 20.0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"weight {f.name} must be non-negative")

    def get(self, term: str) -> float:
        return getattr(self, term)


@dataclass(frozen=True)
class EmphasisWindow:
    """Extra weight on one term for phi in (phi_start, phi_end)."""

    term: str
    phi_start: float
    phi_end: float
    extra: float

    def __post_init__(self):
        if self.term not in ALL_TERMS:
            raise ValueError(f"unknown reward term {self.term!r}")
        if not self.phi_start < self.phi_end:
            raise ValueError("need phi_start < phi_end")
        if self.extra < 0:
            raise ValueError("extra weight must be non-negative")


def scheduled_weight(phi: float, base: float, window: EmphasisWindow | None) -> float:
    """Base weight plus the window's extra strictly inside (phi_start, phi_end)."""
    if window is None:
        return base
    inside = window.phi_start < phi < window.phi_end
    return base + (window.extra if inside else 0.0)


def effective_weights(weights: RewardWeights, phi: float | None,
                      windows: list[EmphasisWindow]) -> dict[str, float]:
    out = {term: weights.get(term) for term in ALL_TERMS}
    if phi is None:
        return out
    for window in windows:
        out[window.term] = scheduled_weight(phi, out[window.term], window)
    return out


def load_weights(path: str | Path) -> tuple[RewardWeights, dict[str, list[EmphasisWindow]]]:
    with open(path) as f:
        spec = yaml.safe_load(f)
    if spec.get("schema") != WEIGHTS_SCHEMA:
        raise ValueError(f"unsupported reward schema: {spec.get('schema')!r}")
    weights = RewardWeights(**{k: float(v) for k, v in spec["weights"].items()})
    emphasis = {}
    for name, rows in (spec.get("emphasis") or {}).items():
        emphasis[name] = [EmphasisWindow(term=r["term"], phi_start=float(r["phi_start"]),
                                         phi_end=float(r["phi_end"]), extra=float(r["extra"]))
                          for r in rows]
    return weights, emphasis


def default_weights() -> RewardWeights:
    from ..config import data_path
    return load_weights(data_path("reward_weights.yaml"))[0]
