"""Policy observation: path-frame pose plus body-frame velocities.

The layout is fixed and versioned; policy weight files must match it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import quat_about_z, quat_conj, quat_mul, quat_rotate
from ..motion.frame import PathFrame

OBSERVATION_LAYOUT_VERSION = "showbot-obs/1"

# Channels: p_xy (2), torso quat in path frame (4), linear velocity (3),
# angular velocity (3), joints (14), joint velocities (14), two previous
# actions (14 each).
OBSERVATION_DIM = 2 + 4 + 3 + 3 + 14 + 14 + 14 + 14


@dataclass
class RobotObservables:
    """What the runtime reads back from the plant (or estimator) each tick."""

    position: np.ndarray
    orientation: np.ndarray
    lin_vel: np.ndarray
    ang_vel: np.ndarray
    joint_pos: np.ndarray
    joint_vel: np.ndarray


@dataclass
class Observation:
    planar_pos: np.ndarray     # torso xy in path frame
    orientation: np.ndarray    # torso quat relative to the path heading
    lin_vel: np.ndarray        # body frame
    ang_vel: np.ndarray        # body frame
    joint_pos: np.ndarray
    joint_vel: np.ndarray
    prev_action: np.ndarray
    prev2_action: np.ndarray

    def to_vector(self) -> np.ndarray:
        return np.concatenate([
            self.planar_pos, self.orientation, self.lin_vel, self.ang_vel,
            self.joint_pos, self.joint_vel, self.prev_action, self.prev2_action,
        ])


def build_observation(state: RobotObservables, frame: PathFrame,
                      prev_action: np.ndarray, prev2_action: np.ndarray) -> Observation:
    """World state expressed invariantly to the robot's global placement."""
    planar = frame.from_world(state.position[:2])
    rel_quat = quat_mul(quat_about_z(-frame.heading), state.orientation)
    if rel_quat[0] < 0.0:
        rel_quat = -rel_quat
    inv = quat_conj(state.orientation)
    v_body = quat_rotate(inv, state.lin_vel)
    w_body = quat_rotate(inv, state.ang_vel)
    obs = Observation(
        planar_pos=planar, orientation=rel_quat, lin_vel=v_body, ang_vel=w_body,
        joint_pos=np.asarray(state.joint_pos, dtype=float).copy(),
        joint_vel=np.asarray(state.joint_vel, dtype=float).copy(),
        prev_action=np.asarray(prev_action, dtype=float).copy(),
        prev2_action=np.asarray(prev2_action, dtype=float).copy(),
    )
    vec = obs.to_vector()
    if not np.all(np.isfinite(vec)):
        raise ValueError("observation contains non-finite values")
    return obs


def default_observation_ranges() -> np.ndarray:
    """Expected channel magnitudes used for input normalization."""
    return np.concatenate([
        np.full(2, 0.5),     # planar position [m]
        np.full(4, 1.0),     # quaternion components
        np.full(3, 1.0),     # linear velocity [m/s]
        np.full(3, 2.0),     # angular velocity [rad/s]
        np.full(14, 1.5),    # joint positions [rad]
        np.full(14, 10.0),   # joint velocities [rad/s]
        np.full(14, 1.0),    # previous action
        np.full(14, 1.0),    # action before that
    ])
