"""Robot configuration and kinematic target-state containers."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..geometry import (
    Transform,
    quat_about_z,
    quat_identity,
    quat_mul,
    quat_normalize,
    quat_rotate,
)


@dataclass
class RobotConfig:
    """Animated robot configuration: torso pose plus joint vector.

    ``position`` holds the planar torso position (path-frame xy) in its first
    two components and the torso height above ground in the third.
    """

    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    orientation: np.ndarray = field(default_factory=quat_identity)
    q: np.ndarray = field(default_factory=lambda: np.zeros(14))

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float).copy()
        self.orientation = quat_normalize(self.orientation)
        self.q = np.asarray(self.q, dtype=float).copy()

    def copy(self) -> "RobotConfig":
        return RobotConfig(self.position, self.orientation, self.q)

    def torso_transform(self, base_height: float | None = None) -> Transform:
        pos = self.position.copy()
        if base_height is not None:
            pos[2] = base_height
        return Transform(pos=pos, quat=self.orientation)


@dataclass
class KinematicTargetState:
    """Time-varying reference tuple: torso pose/velocities, joints, contacts."""

    position: np.ndarray
    orientation: np.ndarray
    lin_vel: np.ndarray
    ang_vel: np.ndarray
    joint_pos: np.ndarray
    joint_vel: np.ndarray
    contact_left: bool
    contact_right: bool

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float).copy()
        self.orientation = quat_normalize(self.orientation)
        self.lin_vel = np.asarray(self.lin_vel, dtype=float).copy()
        self.ang_vel = np.asarray(self.ang_vel, dtype=float).copy()
        self.joint_pos = np.asarray(self.joint_pos, dtype=float).copy()
        self.joint_vel = np.asarray(self.joint_vel, dtype=float).copy()
        if self.joint_pos.shape != (14,) or self.joint_vel.shape != (14,):
            raise ValueError("joint vectors must have length 14")

    @classmethod
    def rest(cls, position, orientation, joint_pos) -> "KinematicTargetState":
        return cls(position, orientation, np.zeros(3), np.zeros(3),
                   joint_pos, np.zeros(14), True, True)

    def copy(self) -> "KinematicTargetState":
        return replace(self)

    def transformed(self, planar_pos, heading) -> "KinematicTargetState":
        """Map a state stored in path coordinates through a planar frame."""
        qz = quat_about_z(heading)
        offset = np.array([planar_pos[0], planar_pos[1], 0.0])
        return KinematicTargetState(
            position=offset + quat_rotate(qz, self.position),
            orientation=quat_mul(qz, self.orientation),
            lin_vel=quat_rotate(qz, self.lin_vel),
            ang_vel=quat_rotate(qz, self.ang_vel),
            joint_pos=self.joint_pos,
            joint_vel=self.joint_vel,
            contact_left=self.contact_left,
            contact_right=self.contact_right,
        )
