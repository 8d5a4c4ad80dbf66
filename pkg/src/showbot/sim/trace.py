"""Trace persistence: 50 Hz CSV (inspectable) and 600 Hz binary (volume).

Floats are serialized with shortest round-trip repr in the CSV and raw
float64 in the binary channel, so identical runs produce bit-identical
files.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

TRACE_MAGIC = b"SBT6"
TRACE_VERSION = 1

FAST_CHANNELS = ("setpoint", "q", "qd", "tau", "tau_m")
N_JOINTS = 14


class FastTraceWriter:
    """Binary-framed 600 Hz channel: header, then fixed-size float64 rows."""

    def __init__(self, path: str | Path, n_joints: int = N_JOINTS):
        self.path = Path(path)
        self.n_joints = n_joints
        self._fh = open(self.path, "wb")
        meta = {"channels": list(FAST_CHANNELS), "n_joints": n_joints,
                "rate_hz": 600.0}
        blob = json.dumps(meta, sort_keys=True).encode()
        self._fh.write(TRACE_MAGIC)
        self._fh.write(struct.pack("<II", TRACE_VERSION, len(blob)))
        self._fh.write(blob)
        self._row_len = 1 + n_joints * len(FAST_CHANNELS)

    def write(self, t: float, setpoint, q, qd, tau, q_hat):
        row = np.concatenate([[t], setpoint, q, qd, tau, q_hat]).astype("<f8")
        if row.shape[0] != self._row_len:
            raise ValueError("trace row width mismatch")
        self._fh.write(row.tobytes())

    def close(self):
        self._fh.close()


def read_fast_trace(path: str | Path) -> dict[str, np.ndarray]:
    path = Path(path)
    raw = path.read_bytes()
    if raw[:4] != TRACE_MAGIC:
        raise ValueError(f"{path}: not a trace file")
    version, meta_len = struct.unpack_from("<II", raw, 4)
    if version != TRACE_VERSION:
        raise ValueError(f"{path}: unsupported trace version {version}")
    meta = json.loads(raw[12:12 + meta_len].decode())
    n = meta["n_joints"]
    body = np.frombuffer(raw[12 + meta_len:], dtype="<f8")
    row_len = 1 + n * len(meta["channels"])
    rows = body.reshape(-1, row_len)
    out = {"t": rows[:, 0]}
    for i, channel in enumerate(meta["channels"]):
        out[channel] = rows[:, 1 + i * n:1 + (i + 1) * n]
    return out


class DecisionTraceWriter:
    """50 Hz CSV: one row per decision tick."""

    def __init__(self, path: str | Path, n_joints: int = N_JOINTS,
                 rewards: bool = False):
        self.path = Path(path)
        self.n_joints = n_joints
        self.rewards = rewards
        self._fh = open(self.path, "w")
        cols = ["t", "mode", "phi", "vx", "vy", "wz", "h_torso", "dh_head",
                "ref_px", "ref_py", "ref_yaw", "frame_x", "frame_y", "frame_yaw"]
        for group in ("action", "setpoint", "q_ref", "q", "qd", "tau"):
            cols += [f"{group}_{i}" for i in range(n_joints)]
        if rewards:
            cols += ["reward_total", "reward_imitation", "reward_regularization",
                     "reward_survival"]
        self._fh.write(",".join(cols) + "\n")

    @staticmethod
    def _fmt(v) -> str:
        return repr(float(v))

    def write(self, t, mode, phi, command, ref_pose, frame_pose, action,
              setpoint, q_ref, q, qd, tau, reward=None):
        vx, vy, wz, h_torso, dh_head = command
        row = [self._fmt(t), mode, self._fmt(phi if phi is not None else -1.0),
               self._fmt(vx), self._fmt(vy), self._fmt(wz),
               self._fmt(h_torso), self._fmt(dh_head)]
        row += [self._fmt(v) for v in ref_pose]
        row += [self._fmt(v) for v in frame_pose]
        for group in (action, setpoint, q_ref, q, qd, tau):
            row += [self._fmt(v) for v in group]
        if self.rewards:
            if reward is None:
                row += ["0.0"] * 4
            else:
                row += [self._fmt(reward.total), self._fmt(reward.imitation_total),
                        self._fmt(reward.regularization_total),
                        self._fmt(reward.survival_total)]
        self._fh.write(",".join(row) + "\n")

    def close(self):
        self._fh.close()


def read_decision_trace(path: str | Path) -> dict[str, np.ndarray]:
    path = Path(path)
    with open(path) as f:
        header = f.readline().strip().split(",")
        rows = [line.strip().split(",") for line in f if line.strip()]
    out: dict[str, list] = {name: [] for name in header}
    for row in rows:
        for name, value in zip(header, row):
            out[name].append(value)
    arrays: dict[str, np.ndarray] = {}
    for name, values in out.items():
        if name == "mode":
            arrays[name] = np.array(values)
        else:
            arrays[name] = np.array([float(v) for v in values])
    return arrays


@dataclass
class TelemetryFrame:
    """Decimated live snapshot streamed to consoles."""

    t: float
    mode: str
    phi: float | None
    command: dict
    show: list[float]
    joint_pos: list[float]
    joint_vel: list[float]
    joint_torque: list[float]
    setpoint: list[float]
    reference_q: list[float]
    path_frame: dict
    links: dict[str, dict]
    measured_velocity: dict
    reward: dict | None = None
    cues: list[str] = field(default_factory=list)
    trigger: str | None = None
    deadline_misses: int = 0
