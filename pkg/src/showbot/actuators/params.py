"""Actuator parameter sets and per-episode randomization draws."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

PARAMS_SCHEMA = "showbot-actuators/1"

QUASI_DIRECT = "quasi_direct"
HEAD = "head"


@dataclass(frozen=True)
class ActuatorParams:
    """Gains, limits, friction, backlash, and noise for one drive type."""

    name: str
    pd_variant: str
    k_p: float          # N*m/rad
    k_d: float          # N*m*s/rad
    tau_max: float      # N*m
    qdot_tau_max: float  # rad/s, start of the torque ramp-down
    qdot_max: float     # rad/s, zero-torque crossing of the ramp
    mu_s: float         # N*m static friction
    mu_d: float         # N*m*s/rad viscous friction
    b_min: float        # rad backlash range
    b_max: float
    eps_q_max: float    # rad encoder offset bound
    sigma_q0: float     # rad measurement noise floor
    sigma_q1: float     # rad per rad/s velocity-proportional noise
    armature: float     # kg*m^2 reflected inertia
    qdot_s: float       # rad/s friction activation
    tau_b: float        # N*m backlash activation
    armature_scale_range: tuple[float, float] = (0.8, 1.2)

    def __post_init__(self):
        if self.pd_variant not in (QUASI_DIRECT, HEAD):
            raise ValueError(f"unknown pd_variant {self.pd_variant!r}")
        if not self.tau_max > 0:
            raise ValueError("tau_max must be positive")
        if not (0.0 < self.qdot_tau_max < self.qdot_max):
            raise ValueError("need 0 < qdot_tau_max < qdot_max")
        if self.b_min > self.b_max:
            raise ValueError("backlash bounds out of order")
        if min(self.sigma_q0, self.sigma_q1, self.eps_q_max) < 0:
            raise ValueError("noise parameters must be non-negative")
        if not self.qdot_s > 0:
            raise ValueError("qdot_s must be positive")
        if not self.tau_b > 0:
            raise ValueError("tau_b must be positive")


@dataclass(frozen=True)
class ActuatorDraw:
    """Per-episode randomization: encoder offset, backlash, armature scale."""

    eps_q: float = 0.0
    backlash: float = 0.0
    armature_scale: float = 1.0

    @classmethod
    def nominal(cls) -> "ActuatorDraw":
        return cls(eps_q=0.0, backlash=0.0, armature_scale=1.0)


def sample_draw(params: ActuatorParams, rng: np.random.Generator) -> ActuatorDraw:
    """Uniform draw of episode-level actuator randomization."""
    lo, hi = params.armature_scale_range
    return ActuatorDraw(
        eps_q=float(rng.uniform(-params.eps_q_max, params.eps_q_max)),
        backlash=float(rng.uniform(params.b_min, params.b_max)),
        armature_scale=float(rng.uniform(lo, hi)),
    )


def load_params(path: str | Path) -> dict[str, ActuatorParams]:
    with open(path) as f:
        spec = yaml.safe_load(f)
    if spec.get("schema") != PARAMS_SCHEMA:
        raise ValueError(f"unsupported actuator schema: {spec.get('schema')!r}")
    defaults = spec.get("defaults", {})
    out = {}
    for name, block in spec["types"].items():
        scale_range = tuple(defaults.get("armature_scale_range", (0.8, 1.2)))
        out[name] = ActuatorParams(
            name=name,
            pd_variant=block["pd_variant"],
            k_p=float(block["k_p"]),
            k_d=float(block["k_d"]),
            tau_max=float(block["tau_max"]),
            qdot_tau_max=float(block["qdot_tau_max"]),
            qdot_max=float(block["qdot_max"]),
            mu_s=float(block["mu_s"]),
            mu_d=float(block["mu_d"]),
            b_min=float(block["b_min"]),
            b_max=float(block["b_max"]),
            eps_q_max=float(block["eps_q_max"]),
            sigma_q0=float(block["sigma_q0"]),
            sigma_q1=float(block["sigma_q1"]),
            armature=float(block["armature"]),
            qdot_s=float(block.get("qdot_s", defaults.get("qdot_s", 0.1))),
            tau_b=float(block.get("tau_b", defaults.get("tau_b", 0.5))),
            armature_scale_range=scale_range,
        )
    return out


def default_params() -> dict[str, ActuatorParams]:
    from ..config import data_path
    return load_params(data_path("actuators.yaml"))
