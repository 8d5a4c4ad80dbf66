"""Procedural walk-cycle synthesis and the interpolatable gait library.

Walk cycles are generated over a grid of command points (forward, lateral,
turning velocity) and stored as ordinary gait-sample clips in path
coordinates. The runtime treats stored samples and generated ones
identically; the walking reference is a multilinear interpolation of the
bracketing samples evaluated at the current phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..geometry import (
    Transform,
    matrix_to_quat,
    quat_about_z,
    quat_from_euler_zyx,
    quat_mul,
    quat_normalize,
    quat_rotate,
    quat_rotvec,
    quat_to_matrix,
    rot2d,
    wrap_angle,
)
from ..model import RobotModel, nominal_pose, solve_leg
from ..model.state import KinematicTargetState
from .clips import MotionClip


@dataclass(frozen=True)
class GaitSchedule:
    """Contact timing within one normalized cycle.

    The cycle starts inside a double support; the left step comes first.
    """

    left_swing: tuple[float, float] = (0.05, 0.45)
    right_swing: tuple[float, float] = (0.55, 0.95)

    @property
    def left_step_onset(self) -> float:
        return self.left_swing[0]

    @property
    def right_step_onset(self) -> float:
        return self.right_swing[0]

    @property
    def double_support_onsets(self) -> tuple[float, float]:
        return (self.left_swing[1], self.right_swing[1])

    def contacts(self, phi: float) -> tuple[bool, bool]:
        phi = phi % 1.0
        left = not (self.left_swing[0] <= phi < self.left_swing[1])
        right = not (self.right_swing[0] <= phi < self.right_swing[1])
        return left, right

    def in_double_support(self, phi: float) -> bool:
        left, right = self.contacts(phi)
        return left and right


@dataclass
class GaitParams:
    cycle_duration_base: float = 0.8   # s, at zero command
    cadence_gain: float = 0.5          # cycle shortening toward full command
    step_height: float = 0.04          # m swing apex
    sway_amplitude: float = 0.025      # m lateral torso sway
    bob_amplitude: float = 0.004       # m torso bob (second harmonic, carries the head)
    lean_gain: float = 0.04            # rad forward lean at full speed
    frames_per_cycle: int = 80
    v_max: np.ndarray = field(default_factory=lambda: np.array([0.7, 0.4]))
    w_max: float = 1.8
    schedule: GaitSchedule = field(default_factory=GaitSchedule)

    def cycle_duration(self, command) -> float:
        vx, vy, wz = command
        u = np.sqrt((vx / self.v_max[0]) ** 2 + (vy / self.v_max[1]) ** 2
                    + (wz / self.w_max) ** 2)
        return self.cycle_duration_base / (1.0 + self.cadence_gain * min(u, 1.0))


def unicycle_pose(command, t: float) -> tuple[np.ndarray, float]:
    """Closed-form planar pose after integrating constant path velocities."""
    vx, vy, wz = command
    if abs(wz) < 1e-9:
        return np.array([vx * t, vy * t]), wz * t
    s, c = np.sin(wz * t), np.cos(wz * t)
    x = (vx * s - vy * (1.0 - c)) / wz
    y = (vx * (1.0 - c) + vy * s) / wz
    return np.array([x, y]), wz * t


def _smoothstep(s: float) -> float:
    s = min(max(s, 0.0), 1.0)
    return s * s * (3.0 - 2.0 * s)


class _GaitAuthor:
    """Evaluates the authored walk cycle in world coordinates for any time."""

    def __init__(self, model: RobotModel, command, params: GaitParams):
        self.model = model
        self.command = np.asarray(command, dtype=float)
        self.params = params
        self.cycle = params.cycle_duration(command)
        self.hip_y = model.hip_spacing / 2.0
        self.ankle_h = -model.sole_offset[2]
        nominal = nominal_pose(model)
        self.nominal_neck = nominal.q[model.neck_indices].copy()

    def _path(self, t: float) -> tuple[np.ndarray, float]:
        return unicycle_pose(self.command, t)

    def _anchor(self, side: str, stance_mid_t: float) -> tuple[np.ndarray, float]:
        xy, heading = self._path(stance_mid_t)
        lateral = self.hip_y if side == "L" else -self.hip_y
        pos = xy + rot2d(heading) @ np.array([0.0, lateral])
        return pos, heading

    def _foot(self, side: str, t: float) -> tuple[np.ndarray, float]:
        """Sole position (3d) and heading at absolute time t."""
        sched = self.params.schedule
        onset = sched.left_swing[0] if side == "L" else sched.right_swing[0]
        swing_len = (sched.left_swing[1] - sched.left_swing[0]) if side == "L" \
            else (sched.right_swing[1] - sched.right_swing[0])
        stance_mid_off = onset + swing_len + 0.3  # mid of the 0.6-cycle stance
        u = t / self.cycle - onset
        m = np.floor(u)
        local = u - m
        if local < swing_len:
            s = _smoothstep(local / swing_len)
            p0, h0 = self._anchor(side, (stance_mid_off + m - 1.0) * self.cycle)
            p1, h1 = self._anchor(side, (stance_mid_off + m) * self.cycle)
            xy = (1.0 - s) * p0 + s * p1
            heading = h0 + s * wrap_angle(h1 - h0)
            z = self.params.step_height * np.sin(np.pi * local / swing_len)
        else:
            xy, heading = self._anchor(side, (stance_mid_off + m) * self.cycle)
            z = 0.0
        return np.array([xy[0], xy[1], z]), float(heading)

    def _torso(self, t: float) -> Transform:
        p = self.params
        phi = (t / self.cycle) % 1.0
        xy, heading = self._path(t)
        sway = -p.sway_amplitude * np.sin(2.0 * np.pi * phi)
        pos_xy = xy + rot2d(heading) @ np.array([0.0, sway])
        z = self.model.torso_height_nominal - p.bob_amplitude * np.cos(4.0 * np.pi * phi)
        lean = p.lean_gain * self.command[0] / p.v_max[0]
        quat = quat_from_euler_zyx(heading, lean, 0.0)
        return Transform(pos=np.array([pos_xy[0], pos_xy[1], z]), quat=quat)

    def joints(self, t: float) -> np.ndarray:
        # Neck stays at its nominal pose: the head bob (second harmonic)
        # rides on the torso bob, keeping the neck away from the stretched
        # singularity and matching the standing pose at mode switches.
        torso = self._torso(t)
        q = np.zeros(self.model.n_joints)
        q[self.model.neck_indices] = self.nominal_neck
        for side, sl in (("L", slice(0, 5)), ("R", slice(5, 10))):
            sole, heading = self._foot(side, t)
            ankle = sole + np.array([0.0, 0.0, self.ankle_h])
            res = solve_leg(self.model, side, torso, ankle, foot_yaw=heading)
            q[self.model.leg_indices[sl]] = res.q
        return q

    def world_state(self, t: float):
        torso = self._torso(t)
        return torso, self.joints(t)


def synthesize_gait(model: RobotModel, command, params: GaitParams | None = None,
                    name: str | None = None) -> MotionClip:
    """Author one walk cycle for a constant command; stored in path coordinates."""
    params = params or GaitParams()
    author = _GaitAuthor(model, command, params)
    n = params.frames_per_cycle
    cycle = author.cycle
    dt = cycle / n
    sched = params.schedule

    positions = np.zeros((n, 3))
    quats = np.zeros((n, 4))
    lin_vels = np.zeros((n, 3))
    ang_vels = np.zeros((n, 3))
    joint_pos = np.zeros((n, 14))
    joint_vel = np.zeros((n, 14))
    contacts = np.zeros((n, 2), dtype=bool)

    # One evaluation per sample time, shared by the central differences.
    states = {i: author.world_state(i * dt) for i in range(-1, n + 1)}

    for i in range(n):
        t = i * dt
        torso, q = states[i]
        torso_m, qm = states[i - 1]
        torso_p, qp = states[i + 1]
        v_world = (torso_p.pos - torso_m.pos) / (2.0 * dt)
        dq_rot = quat_mul(torso_p.quat, np.array([1, -1, -1, -1]) * torso_m.quat)
        w_world = quat_rotvec(quat_normalize(dq_rot)) / (2.0 * dt)
        qd = (qp - qm) / (2.0 * dt)

        path_xy, path_heading = author._path(t)
        inv_rot = quat_about_z(-path_heading)
        offset = np.array([path_xy[0], path_xy[1], 0.0])
        positions[i] = quat_rotate(inv_rot, torso.pos - offset)
        quats[i] = quat_normalize(quat_mul(inv_rot, torso.quat))
        lin_vels[i] = quat_rotate(inv_rot, v_world)
        ang_vels[i] = quat_rotate(inv_rot, w_world)
        joint_pos[i] = q
        joint_vel[i] = qd
        contacts[i] = sched.contacts(t / cycle)

    cmd = np.asarray(command, dtype=float)
    return MotionClip(
        name=name or f"gait_{cmd[0]:+.2f}_{cmd[1]:+.2f}_{cmd[2]:+.2f}",
        category="gait-sample", duration=cycle,
        positions=positions, quats=quats, lin_vels=lin_vels, ang_vels=ang_vels,
        joint_pos=joint_pos, joint_vel=joint_vel, contacts=contacts,
        command=cmd, cycle_duration=cycle,
    )


def _axis_weights(values: np.ndarray, x: float) -> list[tuple[int, float]]:
    x = float(np.clip(x, values[0], values[-1]))
    hi = int(np.searchsorted(values, x))
    if hi == 0:
        return [(0, 1.0)]
    if hi >= len(values):
        return [(len(values) - 1, 1.0)]
    lo = hi - 1
    t = (x - values[lo]) / (values[hi] - values[lo])
    if t <= 0.0:
        return [(lo, 1.0)]
    if t >= 1.0:
        return [(hi, 1.0)]
    return [(lo, 1.0 - t), (hi, t)]


class GaitLibrary:
    """Gait samples spanning the command box on an interpolatable grid."""

    def __init__(self, clips: dict[tuple[int, int, int], MotionClip],
                 axes: tuple[np.ndarray, np.ndarray, np.ndarray],
                 params: GaitParams):
        self.clips = clips
        self.axes = axes
        self.params = params
        self.schedule = params.schedule
        for idx in np.ndindex(len(axes[0]), len(axes[1]), len(axes[2])):
            if idx not in clips:
                raise ValueError(f"gait library is missing grid sample {idx}")
        zero = tuple(int(np.argmin(np.abs(ax))) for ax in axes)
        if np.linalg.norm(clips[zero].command) > 1e-9:
            raise ValueError("gait library must contain the zero-velocity sample")

    @classmethod
    def build(cls, model: RobotModel, params: GaitParams | None = None,
              grid: tuple[int, int, int] = (3, 3, 3)) -> "GaitLibrary":
        params = params or GaitParams()
        axes = (
            np.linspace(-params.v_max[0], params.v_max[0], grid[0]),
            np.linspace(-params.v_max[1], params.v_max[1], grid[1]),
            np.linspace(-params.w_max, params.w_max, grid[2]),
        )
        clips = {}
        for i, vx in enumerate(axes[0]):
            for j, vy in enumerate(axes[1]):
                for k, wz in enumerate(axes[2]):
                    clips[(i, j, k)] = synthesize_gait(model, (vx, vy, wz), params)
        return cls(clips, axes, params)

    def corners(self, command) -> list[tuple[MotionClip, float]]:
        wx = _axis_weights(self.axes[0], command[0])
        wy = _axis_weights(self.axes[1], command[1])
        ww = _axis_weights(self.axes[2], command[2])
        out = []
        for i, a in wx:
            for j, b in wy:
                for k, c in ww:
                    out.append((self.clips[(i, j, k)], a * b * c))
        return out

    def sample(self, command, phi: float) -> tuple[KinematicTargetState, float]:
        """Multilinear blend of the bracketing gait samples at phase phi."""
        corners = self.corners(command)
        if len(corners) == 1:
            clip = corners[0][0]
            return clip.sample_state(phi), clip.cycle_duration

        pos = np.zeros(3)
        quat = np.zeros(4)
        lin = np.zeros(3)
        ang = np.zeros(3)
        qj = np.zeros(14)
        qd = np.zeros(14)
        contact = np.zeros(2)
        cycle = 0.0
        ref_quat = None
        for clip, w in corners:
            s = clip.sample_state(phi)
            if ref_quat is None:
                ref_quat = s.orientation
            sq = s.orientation if np.dot(s.orientation, ref_quat) >= 0.0 else -s.orientation
            pos += w * s.position
            quat += w * sq
            lin += w * s.lin_vel
            ang += w * s.ang_vel
            qj += w * s.joint_pos
            qd += w * s.joint_vel
            contact += w * np.array([s.contact_left, s.contact_right], dtype=float)
            cycle += w * clip.cycle_duration
        state = KinematicTargetState(
            position=pos, orientation=quat_normalize(quat), lin_vel=lin, ang_vel=ang,
            joint_pos=qj, joint_vel=qd,
            contact_left=bool(contact[0] >= 0.5), contact_right=bool(contact[1] >= 0.5),
        )
        return state, cycle

    def phase_rate(self, command) -> float:
        cycle = sum(w * clip.cycle_duration for clip, w in self.corners(command))
        return 1.0 / cycle

    def save(self, directory: str | Path):
        from .clips import save_clip
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for idx, clip in self.clips.items():
            save_clip(clip, directory / f"gait_{idx[0]}_{idx[1]}_{idx[2]}.clip")

    @classmethod
    def load(cls, directory: str | Path, params: GaitParams | None = None) -> "GaitLibrary":
        from .clips import load_clip
        params = params or GaitParams()
        directory = Path(directory)
        files = sorted(directory.glob("gait_*.clip"))
        if not files:
            raise ValueError(f"no gait samples found in {directory}")
        loaded = [load_clip(f) for f in files]
        ax = [np.array(sorted({float(c.command[d]) for c in loaded})) for d in range(3)]
        clips = {}
        for clip in loaded:
            idx = tuple(int(np.argmin(np.abs(ax[d] - clip.command[d]))) for d in range(3))
            clips[idx] = clip
        return cls(clips, (ax[0], ax[1], ax[2]), params)
