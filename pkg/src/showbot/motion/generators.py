"""Reference generators for the three motion types.

Each generator maps a path frame (plus phase and command where applicable)
to a kinematic target state in world coordinates. States are produced in
path coordinates internally, so rigidly moving the frame rigidly moves the
output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import (
    Transform,
    quat_about_z,
    quat_from_euler_zyx,
    quat_mul,
    quat_normalize,
    quat_rotvec,
)
from ..model import RobotModel, forward_kinematics, nominal_pose, solve_leg, solve_neck
from ..model.state import KinematicTargetState
from .clips import MotionClip
from .commands import CommandRanges, PerpetualCommand, PeriodicCommand
from .frame import PathFrame
from .gait import GaitLibrary


@dataclass
class GeneratedReference:
    state: KinematicTargetState
    phase_rate: float | None = None
    ik_clamped: bool = False


class NeckKinematics:
    """Shared head-offset machinery: head-chain FK plus analytic re-IK."""

    def __init__(self, model: RobotModel):
        self.model = model
        nominal = nominal_pose(model)
        poses = forward_kinematics(model, nominal)
        self.head_rel = poses["torso"].inverse().compose(poses["head"])
        site_rel = poses["torso"].inverse().compose(poses["head_site"])
        self.site_rel_pos = site_rel.pos
        order = [model.joint_index[n] for n in ("NF", "NY", "NR", "NP")]
        self._chain = [model.joints[i] for i in order]

    def head_pose(self, torso: Transform, q: np.ndarray) -> Transform:
        """Head-site pose from the neck joints of a full joint vector."""
        from ..geometry import quat_from_axis_angle
        pose = torso
        for joint in self._chain:
            local = Transform(pos=joint.origin,
                              quat=quat_from_axis_angle(joint.axis, q[joint.index]))
            pose = pose.compose(local)
        return pose.compose(Transform(pos=self.model.head_site))

    def apply_nominal(self, torso: Transform, dh_head: float, dtheta_head,
                      seed_nf: float = 0.0):
        """Neck joints reaching nominal-on-torso head pose shifted by offsets."""
        base_height = torso.apply(self.site_rel_pos)[2]
        base_quat = quat_mul(torso.quat, self.head_rel.quat)
        return self._solve(torso, base_height, base_quat, dh_head, dtheta_head, seed_nf)

    def apply_relative(self, torso: Transform, q: np.ndarray, dh_head: float,
                       dtheta_head, seed_nf: float = 0.0):
        """Neck joints shifting the current head pose of ``q`` by offsets."""
        head = self.head_pose(torso, q)
        return self._solve(torso, head.pos[2], head.quat, dh_head, dtheta_head, seed_nf)

    def _solve(self, torso, base_height, base_quat, dh_head, dtheta_head, seed_nf):
        target_h = base_height + dh_head
        offset_quat = quat_from_euler_zyx(*dtheta_head)
        target_quat = quat_mul(base_quat, offset_quat)
        return solve_neck(self.model, torso, target_h, target_quat, seed_nf=seed_nf)


class PerpetualGenerator:
    """Standing reference: feet anchored at the frame's nominal stance.

    Velocities are finite-differenced across consecutive calls; the first
    call after a reset reports zero velocities.
    """

    def __init__(self, model: RobotModel, ranges: CommandRanges):
        self.model = model
        self.ranges = ranges
        self.neck = NeckKinematics(model)
        self.hip_y = model.hip_spacing / 2.0
        self.ankle_h = -model.sole_offset[2]
        self._prev: KinematicTargetState | None = None
        self._neck_seed = 0.0
        self.last_clamped = False

    def reset(self):
        self._prev = None
        self._neck_seed = 0.0

    def pose(self, frame: PathFrame, cmd: PerpetualCommand) -> tuple[KinematicTargetState, bool]:
        """Pure pose generation (zero velocities)."""
        cmd = self.ranges.clamp_perpetual(cmd)
        heading_quat = quat_about_z(frame.heading)
        torso_quat = quat_mul(heading_quat, quat_from_euler_zyx(*cmd.theta_torso))
        torso_xy = frame.position
        torso = Transform(pos=np.array([torso_xy[0], torso_xy[1], cmd.h_torso]),
                          quat=torso_quat)

        q = np.zeros(self.model.n_joints)
        clamped = False
        for side, sl in (("L", slice(0, 5)), ("R", slice(5, 10))):
            lateral = self.hip_y if side == "L" else -self.hip_y
            sole_xy = frame.to_world((0.0, lateral))
            ankle = np.array([sole_xy[0], sole_xy[1], self.ankle_h])
            res = solve_leg(self.model, side, torso, ankle, foot_yaw=frame.heading)
            q[self.model.leg_indices[sl]] = res.q
            clamped = clamped or res.clamped

        res = self.neck.apply_nominal(torso, cmd.dh_head, cmd.dtheta_head,
                                      seed_nf=self._neck_seed)
        self._neck_seed = float(res.q[3])
        q[self.model.neck_indices] = res.q
        clamped = clamped or res.clamped

        state = KinematicTargetState.rest(torso.pos, torso.quat, q)
        return state, clamped

    def __call__(self, frame: PathFrame, cmd: PerpetualCommand,
                 dt: float) -> GeneratedReference:
        state, clamped = self.pose(frame, cmd)
        self.last_clamped = clamped
        prev = self._prev
        if prev is not None and dt > 0.0:
            state.lin_vel = (state.position - prev.position) / dt
            dq = quat_mul(state.orientation,
                          np.array([1, -1, -1, -1]) * prev.orientation)
            state.ang_vel = quat_rotvec(quat_normalize(dq)) / dt
            state.joint_vel = (state.joint_pos - prev.joint_pos) / dt
        self._prev = state.copy()
        return GeneratedReference(state=state, ik_clamped=clamped)


class PeriodicGenerator:
    """Walking reference: gait-library interpolation plus head offsets."""

    def __init__(self, model: RobotModel, ranges: CommandRanges, library: GaitLibrary):
        self.model = model
        self.ranges = ranges
        self.library = library
        self.neck = NeckKinematics(model)
        self._neck_seed = 0.0
        self.last_clamped = False

    def reset(self):
        self._neck_seed = 0.0

    def __call__(self, frame: PathFrame, phi: float,
                 cmd: PeriodicCommand) -> GeneratedReference:
        cmd = self.ranges.clamp_periodic(cmd)
        command = np.array([cmd.velocity[0], cmd.velocity[1], cmd.yaw_rate])
        state, cycle = self.library.sample(command, phi)

        clamped = False
        if abs(cmd.dh_head) > 0.0 or np.any(np.abs(cmd.dtheta_head) > 0.0):
            torso = Transform(pos=state.position, quat=state.orientation)
            res = self.neck.apply_relative(torso, state.joint_pos, cmd.dh_head,
                                           cmd.dtheta_head, seed_nf=self._neck_seed)
            self._neck_seed = float(res.q[3])
            state.joint_pos = state.joint_pos.copy()
            state.joint_pos[self.model.neck_indices] = res.q
            clamped = res.clamped

        world = state.transformed(frame.position, frame.heading)
        self.last_clamped = clamped
        return GeneratedReference(state=world, phase_rate=1.0 / cycle,
                                  ik_clamped=clamped)


def gen_episodic(frame: PathFrame, phi: float, clip: MotionClip) -> GeneratedReference:
    """Episodic reference: clip playback composed with the starting frame."""
    if clip.category != "episodic":
        raise ValueError(f"clip {clip.name!r} is not episodic")
    phi = min(max(phi, 0.0), 1.0)
    state = clip.sample_state(phi)
    world = state.transformed(frame.position, frame.heading)
    return GeneratedReference(state=world, phase_rate=1.0 / clip.duration)
