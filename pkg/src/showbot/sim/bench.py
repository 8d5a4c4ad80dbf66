"""Actuator test bench: replay identification-style experiments.

Two load modes: ``locked`` drives the joint through an external velocity
profile (the drive torque cannot move it), ``inertial`` lets the drive spin
its own rotor plus an optional load inertia. Output rows mirror what a
bench rig would log.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from ..actuators import ActuatorDraw, default_params, joint_torque, measured_position, pd_torque, torque_limits
from ..actuators.params import sample_draw
from .dynamics import SIM_DT

BENCH_SCHEMA = "showbot-bench/1"


@dataclass
class BenchProfile:
    actuator: str = "A1"
    mode: str = "locked"            # locked | inertial
    duration: float = 2.0
    seed: int = 0
    randomize: bool = False
    load_inertia: float = 0.05      # kg*m^2, inertial mode only
    setpoint: dict = field(default_factory=lambda: {"type": "step", "value": 1.0,
                                                    "at": 0.1})
    velocity: dict = field(default_factory=lambda: {"type": "ramp", "rate": 10.0})

    def __post_init__(self):
        if self.mode not in ("locked", "inertial"):
            raise ValueError(f"unknown bench mode {self.mode!r}")


def load_profile(path: str | Path) -> BenchProfile:
    with open(path) as f:
        spec = yaml.safe_load(f)
    if spec.get("schema") != BENCH_SCHEMA:
        raise ValueError(f"unsupported bench schema: {spec.get('schema')!r}")
    spec = {k: v for k, v in spec.items() if k != "schema"}
    return BenchProfile(**spec)


def _signal(spec: dict, t: float) -> float:
    kind = spec.get("type", "constant")
    if kind == "constant":
        return float(spec.get("value", 0.0))
    if kind == "step":
        return float(spec.get("value", 1.0)) if t >= float(spec.get("at", 0.0)) else 0.0
    if kind == "ramp":
        return float(spec.get("rate", 1.0)) * t
    if kind == "sine":
        return float(spec.get("amplitude", 1.0)) * np.sin(
            2.0 * np.pi * float(spec.get("frequency", 1.0)) * t)
    raise ValueError(f"unknown signal type {kind!r}")


def run_bench(profile: BenchProfile, params_table=None) -> dict[str, np.ndarray]:
    """Execute the bench schedule; returns column arrays."""
    params_table = params_table or default_params()
    params = params_table[profile.actuator]
    rng = np.random.default_rng(profile.seed)
    draw = sample_draw(params, rng) if profile.randomize else ActuatorDraw.nominal()

    n = int(round(profile.duration / SIM_DT))
    cols = {name: np.zeros(n) for name in
            ("t", "a", "q", "qd", "tau_m", "tau", "tau_lo", "tau_hi", "q_hat")}
    q, qd = 0.0, 0.0
    prev_error = None
    inertia = params.armature * draw.armature_scale + (
        profile.load_inertia if profile.mode == "inertial" else 0.0)

    for i in range(n):
        t = i * SIM_DT
        a = _signal(profile.setpoint, t)
        if profile.mode == "locked":
            qd = _signal(profile.velocity, t)
            q += qd * SIM_DT
        tau_m, prev_error = pd_torque(params, draw, a, q, qd,
                                      prev_error=prev_error, dt=SIM_DT)
        tau = joint_torque(params, tau_m, qd)
        lo, hi = torque_limits(params, qd)
        q_hat = measured_position(params, draw, q, tau_m, qd, rng)
        if profile.mode == "inertial":
            qd += tau / inertia * SIM_DT
            q += qd * SIM_DT
        cols["t"][i] = t
        cols["a"][i] = a
        cols["q"][i] = q
        cols["qd"][i] = qd
        cols["tau_m"][i] = tau_m
        cols["tau"][i] = tau
        cols["tau_lo"][i] = lo
        cols["tau_hi"][i] = hi
        cols["q_hat"][i] = q_hat
    return cols


def write_bench_csv(cols: dict[str, np.ndarray], path: str | Path):
    path = Path(path)
    names = list(cols)
    with open(path, "w") as f:
        f.write(",".join(names) + "\n")
        for i in range(len(cols["t"])):
            f.write(",".join(repr(float(cols[name][i])) for name in names) + "\n")
