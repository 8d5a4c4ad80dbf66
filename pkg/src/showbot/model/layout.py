"""Joint layout and robot model file loading."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

MODEL_SCHEMA = "showbot-robot-model/1"

LEG_JOINT_NAMES = [f"{s}_{j}" for s in ("L", "R") for j in ("HY", "HR", "HP", "KP", "AP")]
NECK_JOINT_NAMES = ["NY", "NR", "NP", "NF"]
ACTUATOR_TAGS = ("A1", "Go1", "XH540")


class ModelError(ValueError):
    """Raised when a model file violates the layout invariants."""


@dataclass(frozen=True)
class Joint:
    name: str
    index: int
    parent: str
    child: str
    axis: np.ndarray
    origin: np.ndarray
    lower: float
    upper: float
    actuator: str


@dataclass(frozen=True)
class SphereProxy:
    link: str
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class BoxProxy:
    link: str
    center: np.ndarray
    half_extents: np.ndarray


class RobotModel:
    """Kinematic description of the 14-joint character."""

    def __init__(self, spec: dict):
        if spec.get("schema") != MODEL_SCHEMA:
            raise ModelError(f"unsupported model schema: {spec.get('schema')!r}")
        self.name = spec.get("name", "robot")
        self.torso_height_nominal = float(spec["torso_height_nominal"])
        self.hip_spacing = float(spec["hip_spacing"])
        self.leg_nominal_length = float(spec["leg_nominal_length"])
        self.leg_extended_length = float(spec["leg_extended_length"])
        self.sole_offset = np.asarray(spec["sole_offset"], dtype=float)
        self.head_site = np.asarray(spec["head_site"], dtype=float)

        self.joints: list[Joint] = []
        for i, j in enumerate(spec["joints"]):
            axis = np.asarray(j["axis"], dtype=float)
            axis = axis / np.linalg.norm(axis)
            lo, hi = (float(v) for v in j["limits"])
            if lo > hi:
                raise ModelError(f"joint {j['name']}: limits out of order")
            if j["actuator"] not in ACTUATOR_TAGS:
                raise ModelError(f"joint {j['name']}: unknown actuator tag {j['actuator']!r}")
            self.joints.append(Joint(
                name=j["name"], index=i, parent=j["parent"], child=j["child"],
                axis=axis, origin=np.asarray(j["origin"], dtype=float),
                lower=lo, upper=hi, actuator=j["actuator"],
            ))
        self._validate_layout()

        self.joint_index = {j.name: j.index for j in self.joints}
        self.leg_indices = np.array([self.joint_index[n] for n in LEG_JOINT_NAMES])
        self.neck_indices = np.array([self.joint_index[n] for n in NECK_JOINT_NAMES])
        self.lower = np.array([j.lower for j in self.joints])
        self.upper = np.array([j.upper for j in self.joints])
        self.actuator_tags = [j.actuator for j in self.joints]

        links = spec.get("links", {})
        self.link_mass = {name: float(v["mass"]) for name, v in links.items()}
        self.link_com = {name: np.asarray(v["com"], dtype=float) for name, v in links.items()}

        prox = spec["proxies"]
        hs = prox["head_sphere"]
        tb = prox["torso_box"]
        self.head_proxy = SphereProxy(hs["link"], np.asarray(hs["center"], dtype=float),
                                      float(hs["radius"]))
        self.torso_proxy = BoxProxy(tb["link"], np.asarray(tb["center"], dtype=float),
                                    np.asarray(tb["half_extents"], dtype=float))

    def _validate_layout(self):
        names = [j.name for j in self.joints]
        if len(names) != len(set(names)):
            raise ModelError("joint names must be unique")
        expected = set(LEG_JOINT_NAMES) | set(NECK_JOINT_NAMES)
        if set(names) != expected or len(names) != 14:
            raise ModelError(f"layout must define exactly the 14 joints {sorted(expected)}")
        for j in self.joints:
            if j.name in ("NY", "NR", "NP") and j.actuator != "XH540":
                raise ModelError(f"head joint {j.name} must use the XH540 actuator")
            if j.name[2:] in ("HY", "HR", "HP", "KP", "AP") and j.actuator == "XH540":
                raise ModelError(f"leg joint {j.name} must use a quasi-direct actuator")

    @property
    def n_joints(self) -> int:
        return len(self.joints)

    def clamp_to_limits(self, q: np.ndarray) -> np.ndarray:
        """Clamp a joint vector into the position limit box (idempotent)."""
        q = np.asarray(q, dtype=float)
        if q.shape != (self.n_joints,):
            raise ValueError(f"expected {self.n_joints} joint values, got {q.shape}")
        return np.clip(q, self.lower, self.upper)

    def nominal_q(self) -> np.ndarray:
        """Standing pose: legs bent to the nominal length, neck upright."""
        beta = self._leg_bend_half_angle(self.leg_nominal_length)
        q = np.zeros(self.n_joints)
        for side in ("L", "R"):
            q[self.joint_index[f"{side}_HP"]] = beta
            q[self.joint_index[f"{side}_KP"]] = -2.0 * beta
            q[self.joint_index[f"{side}_AP"]] = beta
        return q

    def _leg_bend_half_angle(self, hip_ankle_distance: float) -> float:
        # Isoceles two-segment leg: distance = extended_length * cos(beta).
        ratio = hip_ankle_distance / self.leg_extended_length
        return float(np.arccos(np.clip(ratio, -1.0, 1.0)))

    @property
    def thigh_length(self) -> float:
        return 0.5 * self.leg_extended_length

    @property
    def shank_length(self) -> float:
        return 0.5 * self.leg_extended_length


def load_model(path: str | Path) -> RobotModel:
    with open(path) as f:
        spec = yaml.safe_load(f)
    return RobotModel(spec)


def default_model() -> RobotModel:
    from ..config import data_path
    return load_model(data_path("robot_model.yaml"))
