"""Per-joint rotational dynamics closed around the actuator models."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..model import RobotModel, forward_kinematics, nominal_pose

SIM_DT = 1.0 / 600.0


def estimate_load_inertia(model: RobotModel) -> np.ndarray:
    """Fixed-posture load inertia per joint from the link masses.

    Sum of distal link masses times their squared distance to the joint
    origin, evaluated at the nominal pose. Coarse by design; the reflected
    actuator inertia is added separately.
    """
    poses = forward_kinematics(model, nominal_pose(model))
    children = {}
    for joint in model.joints:
        children.setdefault(joint.parent, []).append(joint)

    def distal_links(child_link):
        out = [child_link]
        for joint in children.get(child_link, []):
            out.extend(distal_links(joint.child))
        return out

    inertia = np.zeros(model.n_joints)
    for joint in model.joints:
        origin = poses[joint.parent].apply(joint.origin)
        total = 0.0
        for link in distal_links(joint.child):
            mass = model.link_mass.get(link, 0.0)
            com = poses[link].apply(model.link_com.get(link, np.zeros(3)))
            r = float(np.linalg.norm(com - origin))
            total += mass * max(r, 0.02) ** 2
        inertia[joint.index] = total
    return inertia


@dataclass
class JointDynamics:
    """Semi-implicit Euler integration of independent joint loads."""

    inertia: np.ndarray                 # total inertia incl. armature
    q: np.ndarray = field(default=None)
    qd: np.ndarray = field(default=None)

    def __post_init__(self):
        self.inertia = np.asarray(self.inertia, dtype=float)
        if np.any(self.inertia <= 0.0):
            raise ValueError("inertia must be positive")
        n = self.inertia.shape[0]
        if self.q is None:
            self.q = np.zeros(n)
        if self.qd is None:
            self.qd = np.zeros(n)
        self.q = np.asarray(self.q, dtype=float).copy()
        self.qd = np.asarray(self.qd, dtype=float).copy()

    def step(self, torque, dt: float = SIM_DT):
        """Integrate one tick; velocity first, then position."""
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        self.qd = self.qd + np.asarray(torque, dtype=float) / self.inertia * dt
        self.q = self.q + self.qd * dt
        return self.q.copy(), self.qd.copy()
