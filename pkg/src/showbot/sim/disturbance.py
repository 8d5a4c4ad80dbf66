"""Random disturbance wrenches: per-body on/off renewal processes.

Three categories share one mechanism: when a process turns on it samples a
wrench uniformly per dimension (random sign) and holds it for a random "on"
duration, then rests for a random "off" duration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class DisturbanceCategory:
    name: str
    bodies: tuple[str, ...]
    force_xy: tuple[float, float]    # N
    force_z: tuple[float, float]     # N
    torque_xy: tuple[float, float]   # N*m
    torque_z: tuple[float, float]    # N*m
    on_duration: tuple[float, float]   # s
    off_duration: tuple[float, float]  # s


DEFAULT_CATEGORIES = (
    DisturbanceCategory(
        name="short_small", bodies=("left_hip", "right_hip", "left_foot", "right_foot"),
        force_xy=(0.0, 5.0), force_z=(0.0, 5.0),
        torque_xy=(0.0, 0.25), torque_z=(0.0, 0.25),
        on_duration=(0.25, 2.0), off_duration=(1.0, 3.0)),
    DisturbanceCategory(
        name="long_small", bodies=("pelvis", "head"),
        force_xy=(0.0, 5.0), force_z=(0.0, 5.0),
        torque_xy=(0.0, 0.25), torque_z=(0.0, 0.25),
        on_duration=(2.0, 10.0), off_duration=(1.0, 3.0)),
    DisturbanceCategory(
        name="short_large", bodies=("pelvis",),
        force_xy=(90.0, 150.0), force_z=(0.0, 10.0),
        torque_xy=(0.0, 15.0), torque_z=(0.0, 15.0),
        on_duration=(0.1, 0.1), off_duration=(12.0, 15.0)),
)


@dataclass
class DisturbanceEvent:
    category: str
    body: str
    start: float
    duration: float
    wrench: np.ndarray  # fx fy fz tx ty tz


@dataclass
class _Process:
    category: DisturbanceCategory
    body: str
    active: bool = False
    until: float = 0.0
    wrench: np.ndarray = field(default_factory=lambda: np.zeros(6))

    def sample_wrench(self, rng: np.random.Generator) -> np.ndarray:
        c = self.category

        def draw(bounds, n):
            mags = rng.uniform(bounds[0], bounds[1], size=n)
            signs = rng.choice((-1.0, 1.0), size=n)
            return mags * signs

        return np.concatenate([
            draw(c.force_xy, 2), draw(c.force_z, 1),
            draw(c.torque_xy, 2), draw(c.torque_z, 1),
        ])

    def step(self, t: float, rng: np.random.Generator) -> DisturbanceEvent | None:
        if t < self.until:
            return None
        if self.active:
            self.active = False
            self.wrench = np.zeros(6)
            self.until = t + rng.uniform(*self.category.off_duration)
            return None
        self.active = True
        duration = float(rng.uniform(*self.category.on_duration))
        self.wrench = self.sample_wrench(rng)
        self.until = t + duration
        return DisturbanceEvent(self.category.name, self.body, t, duration,
                                self.wrench.copy())


class DisturbanceSchedule:
    """Independent renewal processes per body and category."""

    def __init__(self, rng: np.random.Generator,
                 categories=DEFAULT_CATEGORIES, enabled: bool = True):
        self.rng = rng
        self.enabled = enabled
        self.processes = [_Process(category=c, body=b)
                          for c in categories for b in c.bodies]
        self.events: list[DisturbanceEvent] = []
        # Stagger the first activations so processes do not fire in lockstep.
        for p in self.processes:
            p.until = float(rng.uniform(*p.category.off_duration))

    def step(self, t: float) -> dict[str, np.ndarray]:
        """Active wrench per body at time t (empty when disabled)."""
        if not self.enabled:
            return {}
        wrenches: dict[str, np.ndarray] = {}
        for p in self.processes:
            event = p.step(t, self.rng)
            if event is not None:
                self.events.append(event)
            if p.active:
                wrenches[p.body] = wrenches.get(p.body, np.zeros(6)) + p.wrench
        return wrenches


# Mapping from disturbed bodies onto the joints that feel them.
BODY_JOINTS = {
    "left_hip": ("L_HY", "L_HR", "L_HP"),
    "right_hip": ("R_HY", "R_HR", "R_HP"),
    "left_foot": ("L_KP", "L_AP"),
    "right_foot": ("R_KP", "R_AP"),
    "pelvis": ("L_HY", "L_HR", "L_HP", "R_HY", "R_HR", "R_HP"),
    "head": ("NY", "NR", "NP", "NF"),
}

FORCE_LEVER = 0.05  # m: force-to-joint-torque coupling
TORQUE_GAIN = 0.25  # fraction of body torque reaching each joint axis


def joint_torques_from_wrenches(model, wrenches: dict[str, np.ndarray]) -> np.ndarray:
    """Project body wrenches onto joint axes with a fixed lever coupling."""
    tau = np.zeros(model.n_joints)
    for body, wrench in wrenches.items():
        for name in BODY_JOINTS.get(body, ()):
            joint = model.joints[model.joint_index[name]]
            axis = joint.axis
            tau[joint.index] += (FORCE_LEVER * float(wrench[:3] @ axis)
                                 + TORQUE_GAIN * float(wrench[3:] @ axis))
    return tau
