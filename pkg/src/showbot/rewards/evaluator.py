"""Imitation, regularization, and survival reward evaluation.

Both the simulated snapshot and the reference are kinematic target states;
all comparisons are relative, so the total is invariant under rigid world
transforms applied to both sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import quat_boxminus
from ..model import RobotModel, forward_kinematics, head_self_collision
from ..model.state import KinematicTargetState, RobotConfig
from .weights import (
    ALL_TERMS,
    IMITATION_TERMS,
    REGULARIZATION_TERMS,
    EmphasisWindow,
    RewardWeights,
    effective_weights,
)


@dataclass
class RewardBreakdown:
    """Per-term unweighted values, applied weights, and group totals."""

    values: dict[str, float] = field(default_factory=dict)
    weights: dict[str, float] = field(default_factory=dict)

    def add(self, term: str, value: float, weight: float):
        self.values[term] = float(value)
        self.weights[term] = float(weight)

    def weighted(self, term: str) -> float:
        return self.values[term] * self.weights[term]

    def group_total(self, terms) -> float:
        return sum(self.weighted(t) for t in terms if t in self.values)

    @property
    def imitation_total(self) -> float:
        return self.group_total(IMITATION_TERMS)

    @property
    def regularization_total(self) -> float:
        return self.group_total(REGULARIZATION_TERMS)

    @property
    def survival_total(self) -> float:
        return self.group_total(("survival",))

    @property
    def total(self) -> float:
        return self.group_total(ALL_TERMS)

    def merge(self, other: "RewardBreakdown") -> "RewardBreakdown":
        out = RewardBreakdown(dict(self.values), dict(self.weights))
        out.values.update(other.values)
        out.weights.update(other.weights)
        return out


def imitation_terms(model: RobotModel, sim: KinematicTargetState,
                    target: KinematicTargetState, weights: dict[str, float]) -> RewardBreakdown:
    """Tracking similarity terms; exponentials peak at 1 for zero error."""
    out = RewardBreakdown()
    li, ni = model.leg_indices, model.neck_indices

    dp = sim.position[:2] - target.position[:2]
    out.add("torso_position_xy", np.exp(-200.0 * float(dp @ dp)),
            weights["torso_position_xy"])
    dr = quat_boxminus(sim.orientation, target.orientation)
    out.add("torso_orientation", np.exp(-20.0 * float(dr @ dr)),
            weights["torso_orientation"])
    dv = sim.lin_vel[:2] - target.lin_vel[:2]
    out.add("linear_velocity_xy", np.exp(-8.0 * float(dv @ dv)),
            weights["linear_velocity_xy"])
    dvz = sim.lin_vel[2] - target.lin_vel[2]
    out.add("linear_velocity_z", np.exp(-8.0 * dvz * dvz),
            weights["linear_velocity_z"])
    dw = sim.ang_vel[:2] - target.ang_vel[:2]
    out.add("angular_velocity_xy", np.exp(-2.0 * float(dw @ dw)),
            weights["angular_velocity_xy"])
    dwz = sim.ang_vel[2] - target.ang_vel[2]
    out.add("angular_velocity_z", np.exp(-2.0 * dwz * dwz),
            weights["angular_velocity_z"])

    dq = sim.joint_pos - target.joint_pos
    out.add("leg_joint_positions", -float(dq[li] @ dq[li]),
            weights["leg_joint_positions"])
    out.add("neck_joint_positions", -float(dq[ni] @ dq[ni]),
            weights["neck_joint_positions"])
    dqd = sim.joint_vel - target.joint_vel
    out.add("leg_joint_velocities", -float(dqd[li] @ dqd[li]),
            weights["leg_joint_velocities"])
    out.add("neck_joint_velocities", -float(dqd[ni] @ dqd[ni]),
            weights["neck_joint_velocities"])

    matches = (float(sim.contact_left == target.contact_left)
               + float(sim.contact_right == target.contact_right))
    out.add("contact", matches, weights["contact"])
    return out


def regularization_terms(model: RobotModel, torques, joint_acc, action,
                         prev_action, prev2_action,
                         weights: dict[str, float]) -> RewardBreakdown:
    """Smoothness penalties: torque, acceleration, action rate and curvature."""
    out = RewardBreakdown()
    li, ni = model.leg_indices, model.neck_indices
    torques = np.asarray(torques, dtype=float)
    joint_acc = np.asarray(joint_acc, dtype=float)
    action = np.asarray(action, dtype=float)
    prev_action = np.asarray(prev_action, dtype=float)
    prev2_action = np.asarray(prev2_action, dtype=float)

    out.add("joint_torques", -float(torques @ torques), weights["joint_torques"])
    out.add("joint_accelerations", -float(joint_acc @ joint_acc),
            weights["joint_accelerations"])
    rate = action - prev_action
    out.add("leg_action_rate", -float(rate[li] @ rate[li]), weights["leg_action_rate"])
    out.add("neck_action_rate", -float(rate[ni] @ rate[ni]), weights["neck_action_rate"])
    acc = action - 2.0 * prev_action + prev2_action
    out.add("leg_action_acc", -float(acc[li] @ acc[li]), weights["leg_action_acc"])
    out.add("neck_action_acc", -float(acc[ni] @ acc[ni]), weights["neck_action_acc"])
    return out


GROUND_CONTACT_HEIGHT = 0.01  # m: proxy bottom below this terminates


def survival_and_termination(model: RobotModel, sim: KinematicTargetState,
                             weights: dict[str, float]) -> tuple[RewardBreakdown, bool]:
    """Survival reward while alive; termination on ground or self contact."""
    config = RobotConfig(position=sim.position, orientation=sim.orientation,
                         q=sim.joint_pos)
    poses = forward_kinematics(model, config)
    head_center = poses[model.head_proxy.link].apply(model.head_proxy.center)
    head_bottom = head_center[2] - model.head_proxy.radius
    box_pose = poses[model.torso_proxy.link]
    corners = np.array([[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)])
    torso_bottom = min(
        box_pose.apply(model.torso_proxy.center + c * model.torso_proxy.half_extents)[2]
        for c in corners)
    terminated = (head_bottom < GROUND_CONTACT_HEIGHT
                  or torso_bottom < GROUND_CONTACT_HEIGHT
                  or head_self_collision(model, config, poses))
    out = RewardBreakdown()
    out.add("survival", 0.0 if terminated else 1.0, weights["survival"])
    return out, terminated


def evaluate(model: RobotModel, sim: KinematicTargetState,
             target: KinematicTargetState, torques, joint_acc, action,
             prev_action, prev2_action, weights: RewardWeights,
             phi: float | None = None,
             windows: list[EmphasisWindow] | None = None) -> tuple[RewardBreakdown, bool]:
    """Full reward of one tick plus the termination flag."""
    w = effective_weights(weights, phi, windows or [])
    breakdown = imitation_terms(model, sim, target, w)
    breakdown = breakdown.merge(
        regularization_terms(model, torques, joint_acc, action, prev_action,
                             prev2_action, w))
    survival, terminated = survival_and_termination(model, sim, w)
    return breakdown.merge(survival), terminated
