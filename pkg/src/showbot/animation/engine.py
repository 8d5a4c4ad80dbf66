"""Three-layer animation engine.

Layer 1 loops a background clip; layer 2 blends one operator-triggered clip
on top; layer 3 folds joystick input into the result and produces the policy
command for the active mode. Output continuity is guaranteed by the ramp
clocks plus a rate limiter on the composited stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import euler_zyx_from_quat, quat_boxminus, quat_from_euler_zyx, quat_mul
from ..model import RobotModel, nominal_pose
from ..model.state import RobotConfig
from ..motion.commands import CommandRanges, PerpetualCommand, PeriodicCommand
from ..motion.clips import MotionClip
from ..motion.generators import NeckKinematics
from .blend import (
    T_ALPHA,
    T_BETA,
    AnimationCommand,
    CommandRateLimiter,
    blend,
    blend_ratios,
)
from .joystick import JoystickInput, JoystickMapping
from .library import AnimationLibrary
from .show import ShowFunctionState

STANDING = "standing"
WALKING = "walking"
EPISODIC = "episodic"

TUCK_ANTENNA_ANGLE = -0.8  # rad, antennas retracted


@dataclass
class ActiveTrigger:
    clip: MotionClip
    start: float
    cancel_time: float | None = None
    beta_at_cancel: float = 0.0
    alpha_at_cancel: float = 0.0

    def ratios(self, now: float) -> tuple[float, float]:
        if self.cancel_time is None:
            return blend_ratios(now - self.start, self.clip.duration)
        dt = now - self.cancel_time
        beta = max(0.0, self.beta_at_cancel - dt / T_BETA)
        alpha = max(0.0, self.alpha_at_cancel - dt / T_ALPHA)
        return beta, alpha

    def finished(self, now: float) -> bool:
        if self.cancel_time is not None:
            return max(self.ratios(now)) == 0.0
        return now - self.start >= self.clip.duration

    def cancel(self, now: float):
        if self.cancel_time is None:
            beta, alpha = self.ratios(now)
            self.cancel_time = now
            self.beta_at_cancel = beta
            self.alpha_at_cancel = alpha


@dataclass
class EngineOutput:
    command: AnimationCommand
    perpetual: PerpetualCommand | None = None
    periodic: PeriodicCommand | None = None
    cues: list[str] = field(default_factory=list)
    trigger: str | None = None
    speed_fraction: float = 0.0


class AnimationEngine:
    def __init__(self, model: RobotModel, library: AnimationLibrary,
                 mapping: JoystickMapping, ranges: CommandRanges):
        self.model = model
        self.library = library
        self.mapping = mapping
        self.ranges = ranges
        self.neck = NeckKinematics(model)
        self.limiter = CommandRateLimiter()
        self.out_limiter = CommandRateLimiter()
        self.joystick = JoystickInput.neutral()
        self.active: ActiveTrigger | None = None
        self.background_on = True
        self.lamp_on = False
        self.tuck_on = False
        self._pending_cues: list[str] = []
        self.last_output: EngineOutput | None = None
        self._neutral = self._neutral_command()
        self._neck_seed = 0.0

    def _neutral_command(self) -> AnimationCommand:
        config = nominal_pose(self.model)
        return AnimationCommand(show=ShowFunctionState(), config=config)

    # ------------------------------------------------------------------ input
    def set_joystick(self, u: JoystickInput):
        self.joystick = u

    def trigger(self, name: str, now: float) -> MotionClip:
        """Start a triggered clip; restarting replaces the active one."""
        clip = self.library.triggered(name)
        self.active = ActiveTrigger(clip=clip, start=now)
        if clip.audio:
            self._pending_cues.append(clip.audio)
        return clip

    def trigger_cue(self, cue: str):
        """Relay a bare audio cue (no motion attached)."""
        self._pending_cues.append(cue)

    def peek_walk_command(self) -> PeriodicCommand:
        """Velocity command the current joystick would produce (no side effects)."""
        off = self.mapping.walking(self.joystick, self.ranges.v_max_xy,
                                   self.ranges.wz[1])
        return self.ranges.clamp_periodic(PeriodicCommand(
            velocity=off.velocity, yaw_rate=off.yaw_rate))

    def cancel_triggers(self, now: float):
        if self.active is not None:
            self.active.cancel(now)

    # ------------------------------------------------------------------ layers
    def _clip_command(self, clip: MotionClip, phi: float) -> AnimationCommand:
        state = clip.sample_state(phi)
        config = RobotConfig(position=state.position, orientation=state.orientation,
                             q=state.joint_pos)
        show_vec = clip.sample_show(phi)
        show = (ShowFunctionState.from_vector(show_vec) if show_vec is not None
                else ShowFunctionState())
        return AnimationCommand(show=show, config=config)

    def background_at(self, t: float) -> AnimationCommand:
        if not self.background_on:
            return self._neutral.copy()
        clip = self.library.background
        return self._clip_command(clip, (t % clip.duration) / clip.duration)

    def _triggered_layer(self, base: AnimationCommand, t: float) -> AnimationCommand:
        if self.active is None:
            return base
        if self.active.finished(t):
            self.active = None
            return base
        playback = min(max(t - self.active.start, 0.0), self.active.clip.duration)
        y_trig = self._clip_command(self.active.clip,
                                    playback / self.active.clip.duration)
        beta, alpha = self.active.ratios(t)
        return blend(base, y_trig, beta, alpha)

    # ------------------------------------------------------------- extraction
    def extract_head_offsets(self, config: RobotConfig) -> tuple[float, np.ndarray]:
        """Head height/orientation offsets of a config vs nominal-on-torso."""
        torso = config.torso_transform()
        head = self.neck.head_pose(torso, config.q)
        base_h = torso.apply(self.neck.site_rel_pos)[2]
        base_quat = quat_mul(torso.quat, self.neck.head_rel.quat)
        rel = quat_mul(np.array([1, -1, -1, -1]) * base_quat, head.quat)
        return float(head.pos[2] - base_h), euler_zyx_from_quat(rel)

    def extract_policy_command(self, y: AnimationCommand, mode: str,
                               velocity=None, yaw_rate: float = 0.0):
        """Policy command from an animation command; leg joints are ignored."""
        dh, dtheta = self.extract_head_offsets(y.config)
        if mode == WALKING:
            v = np.zeros(2) if velocity is None else np.asarray(velocity, dtype=float)
            return self.ranges.clamp_periodic(PeriodicCommand(
                dh_head=dh, dtheta_head=dtheta, velocity=v, yaw_rate=yaw_rate))
        euler = euler_zyx_from_quat(y.config.orientation)
        return self.ranges.clamp_perpetual(PerpetualCommand(
            dh_head=dh, dtheta_head=dtheta,
            h_torso=float(y.config.position[2]), theta_torso=euler))

    # ------------------------------------------------------------------- tick
    def tick(self, t: float, dt: float, mode: str = STANDING) -> EngineOutput:
        y_bg = self.background_at(t)
        y_bld = self._triggered_layer(y_bg, t)
        y_bld = self.limiter.step(y_bld, dt)

        cues, self._pending_cues = self._pending_cues, []
        trigger_name = self.active.clip.name if self.active is not None else None

        if mode == EPISODIC:
            # No joystick input during episodic playback; show layer continues.
            show = y_bld.show.clamped()
            if self.lamp_on:
                show.lamp = 1.0
            y_out = self.out_limiter.step(
                AnimationCommand(show=show, config=y_bld.config), dt)
            self.last_output = EngineOutput(command=y_out, cues=cues,
                                            trigger=trigger_name)
            return self.last_output

        dh_bld, dtheta_bld = self.extract_head_offsets(y_bld.config)
        show = y_bld.show
        if mode == WALKING:
            off = self.mapping.walking(self.joystick, self.ranges.v_max_xy,
                                       self.ranges.wz[1])
            cmd = self.ranges.clamp_periodic(PeriodicCommand(
                dh_head=dh_bld + off.head_height,
                dtheta_head=dtheta_bld + off.head_euler,
                velocity=off.velocity, yaw_rate=off.yaw_rate))
            duck, narrow = self.mapping.show_modulation(off.speed_fraction)
            show = show.copy()
            show.antennas = show.antennas + duck
            show.eye_radii = show.eye_radii * narrow
            config = self._rebuild_config(y_bld.config, cmd.dh_head, cmd.dtheta_head)
            y_out = self.out_limiter.step(
                AnimationCommand(show=self._final_show(show), config=config), dt)
            self.last_output = EngineOutput(command=y_out, periodic=cmd, cues=cues,
                                            trigger=trigger_name,
                                            speed_fraction=off.speed_fraction)
            return self.last_output

        off = self.mapping.standing(self.joystick)
        euler_bld = euler_zyx_from_quat(y_bld.config.orientation)
        cmd = PerpetualCommand(
            dh_head=dh_bld + off.head_height,
            dtheta_head=dtheta_bld + off.head_euler,
            h_torso=float(y_bld.config.position[2]) + off.torso_height,
            theta_torso=euler_bld + off.torso_euler,
        )
        if self.tuck_on:
            cmd.dh_head = self.ranges.dh_head[0]
            cmd.dtheta_head = np.array([0.0, self.ranges.dtheta_head[1, 1], 0.0])
            cmd.h_torso = self.ranges.h_torso[0]
            show = show.copy()
            show.eye_radii = np.zeros(2)
            show.antennas = np.full(2, TUCK_ANTENNA_ANGLE)
        cmd = self.ranges.clamp_perpetual(cmd)
        config = self._rebuild_config(
            y_bld.config, cmd.dh_head, cmd.dtheta_head,
            torso_euler=cmd.theta_torso, torso_height=cmd.h_torso)
        y_out = self.out_limiter.step(
            AnimationCommand(show=self._final_show(show), config=config), dt)
        self.last_output = EngineOutput(command=y_out, perpetual=cmd, cues=cues,
                                        trigger=trigger_name)
        return self.last_output

    def _final_show(self, show: ShowFunctionState) -> ShowFunctionState:
        show = show.copy()
        if self.lamp_on:
            show.lamp = 1.0
        return show.clamped()

    def _rebuild_config(self, base: RobotConfig, dh_head: float, dtheta_head,
                        torso_euler=None, torso_height: float | None = None) -> RobotConfig:
        config = base.copy()
        if torso_euler is not None:
            config.orientation = quat_from_euler_zyx(*torso_euler)
        if torso_height is not None:
            config.position = config.position.copy()
            config.position[2] = torso_height
        res = self.neck.apply_nominal(config.torso_transform(), dh_head, dtheta_head,
                                      seed_nf=self._neck_seed)
        self._neck_seed = float(res.q[3])
        config.q = config.q.copy()
        config.q[self.model.neck_indices] = res.q
        return config
