"""Deployable control stack: 50 Hz decisions bridged to 600 Hz setpoints.

The runtime owns the path frame, phase signal, mode machine, animation
engine, and action pipeline. A plant (simulator or hardware shim) feeds it
robot observables and consumes filtered setpoints plus a gain scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..animation.engine import AnimationEngine
from ..model import RobotModel, forward_kinematics, nominal_pose
from ..model.state import KinematicTargetState, RobotConfig
from ..motion.clips import MotionClip
from ..motion.commands import CommandRanges, PeriodicCommand, PerpetualCommand
from ..motion.frame import PathFrame, project_to_torso, update_standing, update_walking
from ..motion.gait import GaitLibrary
from ..motion.generators import PeriodicGenerator, PerpetualGenerator, gen_episodic
from ..motion.phase import advance as advance_phase
from .actions import ActionPipeline, action_to_setpoints
from .modes import (
    EPISODIC_MODE,
    MOTION_STOP,
    STANDING,
    STOP_GAIN_FACTOR,
    WALKING,
    ModeMachine,
    TransitionError,
)
from .observation import Observation, RobotObservables, build_observation
from .policy import PolicyNet, StubPolicy


@dataclass
class RuntimeConfig:
    decision_dt: float = 1.0 / 50.0
    path_frame_time_constant: float = 1.0   # s, standing convergence
    projection_distance: float = 0.3        # m
    projection_heading: float = 0.5         # rad


@dataclass
class DecisionResult:
    mode: str
    phi: float | None
    reference: KinematicTargetState
    action: np.ndarray
    setpoints: np.ndarray
    observation: Observation
    gain_scale: float = 1.0
    perpetual: PerpetualCommand | None = None
    periodic: PeriodicCommand | None = None
    cues: list[str] = field(default_factory=list)
    frozen: bool = False


class ControlRuntime:
    def __init__(self, model: RobotModel, ranges: CommandRanges,
                 gait_library: GaitLibrary, engine: AnimationEngine,
                 motion_clips: dict[str, MotionClip] | None = None,
                 policy: PolicyNet | None = None,
                 max_deviation: np.ndarray | None = None,
                 config: RuntimeConfig | None = None):
        self.model = model
        self.ranges = ranges
        self.engine = engine
        self.motion_clips = motion_clips or {}
        self.config = config or RuntimeConfig()
        self.modes = ModeMachine(schedule=gait_library.schedule)
        self.perp_gen = PerpetualGenerator(model, ranges)
        self.peri_gen = PeriodicGenerator(model, ranges, gait_library)
        self.gait_library = gait_library

        self.nominal_q = model.nominal_q()
        self.action_scale = 0.5 * (model.upper - model.lower)
        self.max_deviation = (np.asarray(max_deviation, dtype=float)
                              if max_deviation is not None
                              else np.full(model.n_joints, 2.0))
        self.policy_net = policy
        self.stub = StubPolicy(self.nominal_q, self.action_scale)
        self.pipeline = ActionPipeline(n_joints=model.n_joints)

        self.frame = PathFrame()
        self.prev_action = np.zeros(model.n_joints)
        self.prev2_action = np.zeros(model.n_joints)
        self.episodic_entry_frame: PathFrame | None = None
        self.active_clip: MotionClip | None = None
        self.frozen_setpoints: np.ndarray | None = None
        self.last_reference: KinematicTargetState | None = None
        self.time = 0.0

    # ------------------------------------------------------------------ setup
    def reset(self, state: RobotObservables, t: float = 0.0):
        """Initialize frames, phase, pipeline, and action history."""
        self.time = t
        poses = self._poses(state)
        left, right = poses["left_sole"], poses["right_sole"]
        mid = 0.5 * (left.pos[:2] + right.pos[:2])
        heading = self._foot_heading(poses)
        self.frame = PathFrame(mid[0], mid[1], heading)
        self.modes = ModeMachine(schedule=self.modes.schedule)
        a0 = self.stub(state.joint_pos)
        self.prev_action = a0.copy()
        self.prev2_action = a0.copy()
        self.pipeline.reset(np.asarray(state.joint_pos, dtype=float))
        self.perp_gen.reset()
        self.peri_gen.reset()
        self.frozen_setpoints = None
        self.last_reference = None

    def _poses(self, state: RobotObservables):
        config = RobotConfig(position=state.position, orientation=state.orientation,
                             q=state.joint_pos)
        return forward_kinematics(self.model, config)

    @staticmethod
    def _foot_heading(poses) -> float:
        from ..geometry import quat_yaw
        from ..motion.frame import mean_heading
        return mean_heading(quat_yaw(poses["left_sole"].quat),
                            quat_yaw(poses["right_sole"].quat))

    # ------------------------------------------------------------ transitions
    def request_transition(self, target: str, now: float | None = None):
        """Operator transition; walking start phase follows the turn command."""
        now = self.time if now is None else now
        if target == WALKING:
            cmd = self.engine.peek_walk_command()
            self.modes.request(WALKING, now, yaw_rate=cmd.yaw_rate)
            if self.modes.mode == WALKING and self.modes.phase is not None:
                command = np.array([cmd.velocity[0], cmd.velocity[1], cmd.yaw_rate])
                self.modes.phase.rate = self.gait_library.phase_rate(command)
            self.peri_gen.reset()
            return
        if target in (STANDING, MOTION_STOP):
            self.modes.request(target, now)
            if target == MOTION_STOP:
                self.frozen_setpoints = None
            if self.modes.just_switched:
                self.perp_gen.reset()
            return
        raise TransitionError(f"use start_episodic for clip playback, not {target!r}")

    def start_episodic(self, name: str, now: float | None = None):
        now = self.time if now is None else now
        if name not in self.motion_clips:
            raise TransitionError(
                f"unknown motion {name!r}; available: {sorted(self.motion_clips)}")
        clip = self.motion_clips[name]
        self.modes.request(EPISODIC_MODE, now, clip_name=name,
                           clip_duration=clip.duration)
        self.active_clip = clip
        self.episodic_entry_frame = self.frame.copy()
        # Sync the show layer and relay the audio cue.
        if name in self.engine.library.clips and \
                self.engine.library.clips[name].category == "triggered":
            self.engine.trigger(name, now)
        elif clip.audio:
            self.engine.trigger_cue(clip.audio)

    def motion_stop(self, now: float | None = None):
        self.request_transition(MOTION_STOP, now)

    def reset_pose(self, now: float | None = None):
        self.modes.reset_pose(self.time if now is None else now)

    # ---------------------------------------------------------------- decision
    def decision(self, state: RobotObservables, t: float) -> DecisionResult:
        self.time = t
        machine = self.modes

        phi_prev = machine.phase.phi if machine.phase is not None else None
        completed = False
        if machine.phase is not None:
            machine.phase = advance_phase(machine.phase, self.config.decision_dt)
            completed = machine.phase.completed
        phi_new = machine.phase.phi if machine.phase is not None else None
        was_mode = machine.mode
        machine.advance(t, phi_prev, phi_new, completed)
        if machine.just_switched and machine.mode == STANDING and was_mode != STANDING:
            self.perp_gen.reset()

        engine_out = self.engine.tick(t, self.config.decision_dt,
                                      mode=self._engine_mode())

        self._update_frame(state, engine_out)
        reference = self._reference(engine_out)
        self.last_reference = reference.state

        obs = build_observation(state, self.frame, self.prev_action,
                                self.prev2_action)
        action = self._policy_action(obs, reference.state)
        setpoints = action_to_setpoints(action, self.nominal_q, self.action_scale,
                                        state.joint_pos, self.max_deviation)

        gain_scale = 1.0
        frozen = machine.frozen
        if frozen:
            if self.frozen_setpoints is None:
                self.frozen_setpoints = np.asarray(state.joint_pos, dtype=float).copy()
            setpoints = self.frozen_setpoints.copy()
            action = self.stub(setpoints)
            gain_scale = STOP_GAIN_FACTOR
        elif machine.resetting:
            start = (self.frozen_setpoints if self.frozen_setpoints is not None
                     else np.asarray(state.joint_pos, dtype=float))
            s = machine.reset_progress(t)
            setpoints = (1.0 - s) * start + s * self.nominal_q
            action = self.stub(setpoints)
        else:
            self.frozen_setpoints = None

        self.pipeline.push(setpoints)
        self.prev2_action = self.prev_action
        self.prev_action = np.asarray(action, dtype=float).copy()

        return DecisionResult(
            mode=machine.mode, phi=phi_new if machine.phase is not None else None,
            reference=reference.state, action=np.asarray(action, dtype=float),
            setpoints=setpoints, observation=obs, gain_scale=gain_scale,
            perpetual=engine_out.perpetual, periodic=engine_out.periodic,
            cues=engine_out.cues, frozen=frozen,
        )

    def actuation(self, k: int) -> np.ndarray:
        """600 Hz tick k in [1, 12]: first-order hold plus low-pass."""
        return self.pipeline.tick(k)

    # ----------------------------------------------------------------- helpers
    def _engine_mode(self) -> str:
        if self.modes.mode == WALKING:
            return "walking"
        if self.modes.mode == EPISODIC_MODE:
            return "episodic"
        return "standing"

    def _update_frame(self, state: RobotObservables, engine_out):
        dt = self.config.decision_dt
        if self.modes.mode == WALKING and engine_out.periodic is not None:
            cmd = engine_out.periodic
            self.frame = update_walking(self.frame, cmd.velocity, cmd.yaw_rate, dt)
        elif self.modes.mode == EPISODIC_MODE and self.active_clip is not None:
            track = self.active_clip.sample_path(self.modes.phase.phi)
            if track is not None and self.episodic_entry_frame is not None:
                base = self.episodic_entry_frame
                xy = base.to_world(track[:2])
                self.frame = PathFrame(xy[0], xy[1], base.heading + track[2])
        else:
            poses = self._poses(state)
            self.frame = update_standing(
                self.frame, poses["left_sole"].pos, self._foot_heading(poses),
                poses["right_sole"].pos, self._foot_heading(poses), dt,
                time_constant=self.config.path_frame_time_constant)
        from ..geometry import quat_yaw
        self.frame = project_to_torso(
            self.frame, state.position[:2], quat_yaw(state.orientation),
            self.config.projection_distance, self.config.projection_heading)

    def _reference(self, engine_out):
        mode = self.modes.mode
        dt = self.config.decision_dt
        if mode == WALKING and engine_out.periodic is not None:
            ref = self.peri_gen(self.frame, self.modes.phase.phi, engine_out.periodic)
            self.modes.phase.rate = ref.phase_rate
            return ref
        if mode == EPISODIC_MODE and self.active_clip is not None:
            frame = self.episodic_entry_frame or self.frame
            return gen_episodic(frame, self.modes.phase.phi, self.active_clip)
        cmd = engine_out.perpetual or PerpetualCommand(
            h_torso=self.model.torso_height_nominal)
        return self.perp_gen(self.frame, cmd, dt)

    def _policy_action(self, obs: Observation, reference: KinematicTargetState):
        if self.policy_net is not None:
            from .features import phase_features
            vec = obs.to_vector()
            if self.policy_net.input_ranges is not None:
                vec = vec / self.policy_net.input_ranges[:vec.shape[0]]
            phase_mode = ("periodic" if self.modes.mode == WALKING else "episodic")
            if self.modes.phase is not None:
                vec = np.concatenate([vec, phase_features(self.modes.phase.phi,
                                                          phase_mode)])
            pad = self.policy_net.input_dim - vec.shape[0]
            if pad < 0:
                raise ValueError("observation longer than policy input")
            if pad:
                vec = np.concatenate([vec, np.zeros(pad)])
            return self.policy_net.forward(vec)
        return self.stub(reference.joint_pos)
