"""Joystick input state and its mapping onto command offsets.

Puppeteering splits posture from gaze: the left stick moves the torso while
the head counter-rotates to hold the gaze; the right stick moves the gaze,
dragging the torso along only past a configurable knee point of the stick
range. While walking, the posture axes become path velocity commands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

JOYSTICK_SCHEMA = "showbot-joystick/1"


def _axis(v: float) -> float:
    return float(np.clip(v, -1.0, 1.0))


@dataclass
class JoystickInput:
    """Continuous controller state (buttons arrive as discrete messages)."""

    lx: float = 0.0
    ly: float = 0.0
    rx: float = 0.0
    ry: float = 0.0
    l2: float = 0.0
    r2: float = 0.0
    dpad_x: int = 0
    dpad_y: int = 0
    r1_held: bool = False

    def __post_init__(self):
        self.lx, self.ly = _axis(self.lx), _axis(self.ly)
        self.rx, self.ry = _axis(self.rx), _axis(self.ry)
        self.l2 = float(np.clip(self.l2, 0.0, 1.0))
        self.r2 = float(np.clip(self.r2, 0.0, 1.0))
        self.dpad_x = int(np.sign(self.dpad_x))
        self.dpad_y = int(np.sign(self.dpad_y))

    @classmethod
    def neutral(cls) -> "JoystickInput":
        return cls()


@dataclass
class CommandOffsets:
    """Additive command-space deltas produced by the joystick layer."""

    torso_euler: np.ndarray = field(default_factory=lambda: np.zeros(3))  # yaw, pitch, roll
    torso_height: float = 0.0
    head_euler: np.ndarray = field(default_factory=lambda: np.zeros(3))
    head_height: float = 0.0
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(2))
    yaw_rate: float = 0.0
    speed_fraction: float = 0.0


class JoystickMapping:
    def __init__(self, spec: dict):
        if spec.get("schema") != JOYSTICK_SCHEMA:
            raise ValueError(f"unsupported joystick schema: {spec.get('schema')!r}")
        st = spec["standing"]
        self.torso_yaw_range = float(st["torso_yaw_range"])
        self.torso_pitch_range = float(st["torso_pitch_range"])
        self.torso_height_drop = float(st["torso_height_drop"])
        self.torso_roll_range = float(st["torso_roll_range"])
        gz = spec["gaze"]
        self.head_yaw_range = float(gz["head_yaw_range"])
        self.head_pitch_range = float(gz["head_pitch_range"])
        self.knee = float(gz["knee_fraction"])
        self.torso_yaw_reach = float(gz["torso_yaw_reach"])
        self.torso_pitch_reach = float(gz["torso_pitch_reach"])
        dp = spec["dpad"]
        self.head_height_step = float(dp["head_height_step"])
        self.head_roll_step = float(dp["head_roll_step"])
        self.velocity_gain_low = float(spec["walking"]["velocity_gain_low"])
        sm = spec["show_modulation"]
        self.engage_fraction = float(sm["engage_fraction"])
        self.antenna_duck = float(sm["antenna_duck"])
        self.eye_narrow = float(sm["eye_narrow"])

    def _gaze(self, stick: float, head_range: float, torso_reach: float) -> tuple[float, float]:
        """Head offset up to the knee; additive torso offset beyond it."""
        mag = abs(stick)
        sign = np.sign(stick)
        head = sign * head_range * min(mag / self.knee, 1.0)
        torso = sign * torso_reach * max(0.0, (mag - self.knee) / (1.0 - self.knee))
        return float(head), float(torso)

    def _gaze_offsets(self, u: JoystickInput, out: CommandOffsets):
        # Right stick: gaze. Stick right = yaw right (negative), up = look up.
        head_yaw, torso_yaw = self._gaze(-u.rx, self.head_yaw_range,
                                         self.torso_yaw_reach)
        head_pitch, torso_pitch = self._gaze(-u.ry, self.head_pitch_range,
                                             self.torso_pitch_reach)
        out.head_euler[0] += head_yaw
        out.head_euler[1] += head_pitch
        out.torso_euler[0] += torso_yaw
        out.torso_euler[1] += torso_pitch
        # D-pad: head height up/down, head roll left/right.
        out.head_height += u.dpad_y * self.head_height_step
        out.head_euler[2] += u.dpad_x * self.head_roll_step

    def standing(self, u: JoystickInput) -> CommandOffsets:
        out = CommandOffsets()
        # Left stick: posture with a fixed gaze (head counter-rotates).
        torso_yaw = -u.lx * self.torso_yaw_range
        out.torso_euler[0] += torso_yaw
        out.head_euler[0] -= torso_yaw
        if u.ly >= 0.0:
            torso_pitch = u.ly * self.torso_pitch_range
            out.torso_euler[1] += torso_pitch
            out.head_euler[1] -= torso_pitch
        else:
            out.torso_height += u.ly * self.torso_height_drop
        # Triggers roll the torso, head stationary.
        torso_roll = (u.r2 - u.l2) * self.torso_roll_range
        out.torso_euler[2] += torso_roll
        out.head_euler[2] -= torso_roll
        self._gaze_offsets(u, out)
        return out

    def walking(self, u: JoystickInput, v_max: np.ndarray, w_max: float) -> CommandOffsets:
        out = CommandOffsets()
        gain = 1.0 if u.r1_held else self.velocity_gain_low
        out.velocity = np.array([u.ly * v_max[0], (u.l2 - u.r2) * v_max[1]]) * gain
        out.yaw_rate = -u.lx * w_max * gain
        out.speed_fraction = float(np.linalg.norm(out.velocity) / max(v_max[0], 1e-9))
        self._gaze_offsets(u, out)
        return out

    def show_modulation(self, speed_fraction: float) -> tuple[float, float]:
        """(antenna offset, eye radius scale) as the robot approaches top speed."""
        engaged = (speed_fraction - self.engage_fraction) / (1.0 - self.engage_fraction)
        ramp = float(np.clip(engaged, 0.0, 1.0))
        return self.antenna_duck * ramp, 1.0 - self.eye_narrow * ramp


def load_mapping(path: str | Path) -> JoystickMapping:
    with open(path) as f:
        return JoystickMapping(yaml.safe_load(f))


def default_mapping() -> JoystickMapping:
    from ..config import data_path
    return load_mapping(data_path("joystick.yaml"))
