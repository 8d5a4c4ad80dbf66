"""Episode harness: runtime + joint-level plant + rewards + traces.

The torso follows the kinematic reference (no floating-base contact
dynamics); every joint runs the full drive model closed around its own
rotational dynamics. Disturbance wrenches perturb joint loads through a
fixed coupling and are recorded alongside the traces.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from ..actuators import ActuatorDraw, default_params, joint_torque, measured_position, pd_torque
from ..actuators.params import ActuatorParams, sample_draw
from ..animation.engine import AnimationEngine
from ..animation.joystick import JoystickInput, default_mapping
from ..animation.library import AnimationLibrary, default_library
from ..geometry import quat_yaw
from ..model import RobotModel, default_model, nominal_pose
from ..model.state import KinematicTargetState
from ..motion.clips import MotionClip, load_clip
from ..motion.commands import CommandRanges, default_ranges
from ..motion.gait import GaitLibrary
from ..rewards import RewardWeights, default_weights, evaluate
from ..control.observation import RobotObservables
from ..control.runtime import ControlRuntime, RuntimeConfig
from .disturbance import DisturbanceSchedule, joint_torques_from_wrenches
from .dynamics import SIM_DT, JointDynamics, estimate_load_inertia
from .scenario import EpisodeScenario, ScenarioError
from .trace import DecisionTraceWriter, FastTraceWriter, TelemetryFrame

DECISION_DT = 1.0 / 50.0
INNER_STEPS = 12


@dataclass(frozen=True)
class RuntimeBundle:
    """Shared, episode-independent assets."""

    model: RobotModel
    ranges: CommandRanges
    gait_library: GaitLibrary
    animations: AnimationLibrary
    motions: dict[str, MotionClip]
    actuator_params: dict[str, ActuatorParams]
    weights: RewardWeights

    def max_deviation(self) -> np.ndarray:
        """Setpoint clip radius per joint: enough to demand peak torque."""
        out = np.zeros(self.model.n_joints)
        for joint in self.model.joints:
            p = self.actuator_params[joint.actuator]
            out[joint.index] = p.tau_max / p.k_p
        return out


def load_motions(directory: Path) -> dict[str, MotionClip]:
    clips = {}
    for f in sorted(Path(directory).glob("*.clip")):
        clip = load_clip(f)
        if clip.category == "episodic":
            clips[clip.name] = clip
    return clips


@lru_cache(maxsize=1)
def default_bundle() -> RuntimeBundle:
    from ..config import data_path
    model = default_model()
    return RuntimeBundle(
        model=model,
        ranges=default_ranges(),
        gait_library=GaitLibrary.build(model),
        animations=default_library(),
        motions=load_motions(data_path("motions")),
        actuator_params=default_params(),
        weights=default_weights(),
    )


def build_runtime(bundle: RuntimeBundle) -> ControlRuntime:
    engine = AnimationEngine(bundle.model, bundle.animations, default_mapping(),
                             bundle.ranges)
    return ControlRuntime(
        model=bundle.model, ranges=bundle.ranges,
        gait_library=bundle.gait_library, engine=engine,
        motion_clips=bundle.motions, max_deviation=bundle.max_deviation(),
        config=RuntimeConfig(decision_dt=DECISION_DT),
    )


class Plant:
    """Joint-level physics: drive models plus per-joint rotational dynamics."""

    def __init__(self, bundle: RuntimeBundle, rng_draw: np.random.Generator,
                 rng_noise: np.random.Generator, randomize: bool = True,
                 noise: bool = True):
        model = bundle.model
        self.model = model
        self.rng_noise = rng_noise
        self.noise = noise
        self.groups = []
        load_inertia = estimate_load_inertia(model)
        inertia = np.zeros(model.n_joints)
        for tag, params in bundle.actuator_params.items():
            idx = np.array([j.index for j in model.joints if j.actuator == tag])
            if idx.size == 0:
                continue
            if randomize:
                draws = [sample_draw(params, rng_draw) for _ in idx]
            else:
                draws = [ActuatorDraw.nominal() for _ in idx]
            draw = ActuatorDraw(
                eps_q=np.array([d.eps_q for d in draws]),
                backlash=np.array([d.backlash for d in draws]),
                armature_scale=np.array([d.armature_scale for d in draws]),
            )
            inertia[idx] = (load_inertia[idx]
                            + params.armature * draw.armature_scale)
            self.groups.append({"tag": tag, "params": params, "idx": idx,
                                "draw": draw, "prev_error": None})
        q0 = model.nominal_q()
        self.dynamics = JointDynamics(inertia=inertia, q=q0)
        self.last_tau = np.zeros(model.n_joints)
        self.last_tau_m = np.zeros(model.n_joints)

    @property
    def q(self) -> np.ndarray:
        return self.dynamics.q

    @property
    def qd(self) -> np.ndarray:
        return self.dynamics.qd

    def step(self, setpoints: np.ndarray, gain_scale: float = 1.0,
             extra_tau: np.ndarray | None = None, dt: float = SIM_DT):
        tau = np.zeros(self.model.n_joints)
        tau_m_all = np.zeros(self.model.n_joints)
        q, qd = self.dynamics.q, self.dynamics.qd
        for g in self.groups:
            idx = g["idx"]
            tau_m, error = pd_torque(g["params"], g["draw"], setpoints[idx],
                                     q[idx], qd[idx], prev_error=g["prev_error"],
                                     dt=dt, gain_scale=gain_scale)
            g["prev_error"] = error
            tau[idx] = joint_torque(g["params"], tau_m, qd[idx])
            tau_m_all[idx] = tau_m
        total = tau if extra_tau is None else tau + extra_tau
        self.dynamics.step(total, dt)
        self.last_tau = tau
        self.last_tau_m = tau_m_all
        return tau

    def measure(self) -> np.ndarray:
        """Encoder readings for all joints (offset, backlash, noise)."""
        out = np.zeros(self.model.n_joints)
        q, qd = self.dynamics.q, self.dynamics.qd
        for g in self.groups:
            idx = g["idx"]
            params = g["params"]
            if not self.noise:
                from dataclasses import replace
                params = replace(params, sigma_q0=0.0, sigma_q1=0.0)
            out[idx] = measured_position(params, g["draw"], q[idx],
                                         self.last_tau_m[idx], qd[idx],
                                         self.rng_noise)
        return out


@dataclass
class TransitionRecord:
    t: float
    from_mode: str
    to_mode: str
    phi_before: float | None
    phi_after: float | None


@dataclass
class EpisodeResult:
    name: str
    duration: float
    ticks: int
    terminated: bool
    terminated_at: float | None
    mae: float
    reward_total: float
    reward_means: dict
    transitions: list[TransitionRecord]
    deadline_misses: int
    fast_trace: str | None
    decision_trace: str | None
    cues: list[str]


def _apply_event(event, runtime: ControlRuntime, engine: AnimationEngine, t: float,
                 ranges: CommandRanges, mapping):
    kind, args = event.kind, event.args
    if kind == "transition":
        runtime.request_transition(args["target"], now=t)
    elif kind == "episodic":
        runtime.start_episodic(args["name"], now=t)
    elif kind == "trigger":
        engine.trigger(args["name"], t)
    elif kind == "motion_stop":
        runtime.motion_stop(now=t)
    elif kind == "reset_pose":
        runtime.reset_pose(now=t)
    elif kind == "joystick":
        engine.set_joystick(JoystickInput(**args))
    elif kind == "command":
        # Direct velocity command, inverted through the joystick map.
        vx = float(args.get("vx", 0.0))
        vy = float(args.get("vy", 0.0))
        wz = float(args.get("wz", 0.0))
        v_max = ranges.v_max_xy
        engine.set_joystick(JoystickInput(
            ly=vx / v_max[0], l2=max(vy, 0.0) / v_max[1],
            r2=max(-vy, 0.0) / v_max[1], lx=-wz / ranges.wz[1], r1_held=True))
    elif kind == "lamp":
        engine.lamp_on = bool(args.get("on", True))
    elif kind == "tuck":
        engine.tuck_on = bool(args.get("on", True))
    elif kind == "background":
        engine.background_on = bool(args.get("on", True))


def run_episode(scenario: EpisodeScenario, out_dir: str | Path | None = None,
                bundle: RuntimeBundle | None = None,
                telemetry_sink=None) -> EpisodeResult:
    bundle = bundle or default_bundle()
    triggers, motions = scenario.referenced_clips()
    for name in triggers:
        bundle.animations.triggered(name)  # raises before starting
    for name in motions:
        if name not in bundle.motions:
            raise ScenarioError(f"script references missing motion clip {name!r}; "
                                f"available: {sorted(bundle.motions)}")

    seeds = np.random.SeedSequence(scenario.seed).spawn(3)
    rng_draw = np.random.default_rng(seeds[0])
    rng_noise = np.random.default_rng(seeds[1])
    rng_dist = np.random.default_rng(seeds[2])

    runtime = build_runtime(bundle)
    engine = runtime.engine
    mapping = engine.mapping
    plant = Plant(bundle, rng_draw, rng_noise,
                  randomize=scenario.randomize_actuators,
                  noise=scenario.measurement_noise)
    disturbances = DisturbanceSchedule(rng_dist, enabled=scenario.disturbances)

    model = bundle.model
    nominal = nominal_pose(model)
    reference = KinematicTargetState.rest(nominal.position, nominal.orientation,
                                          nominal.q)
    observables = RobotObservables(
        position=reference.position, orientation=reference.orientation,
        lin_vel=np.zeros(3), ang_vel=np.zeros(3),
        joint_pos=plant.q.copy(), joint_vel=plant.qd.copy(),
    )
    runtime.reset(observables, t=0.0)
    if scenario.initial_mode == "walking":
        runtime.request_transition("walking", now=0.0)

    fast_writer = decision_writer = None
    fast_path = decision_path = None
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        fast_path = out_dir / f"{scenario.name}_600hz.trace"
        decision_path = out_dir / f"{scenario.name}_50hz.csv"
        fast_writer = FastTraceWriter(fast_path, n_joints=model.n_joints)
        decision_writer = DecisionTraceWriter(decision_path, n_joints=model.n_joints,
                                              rewards=scenario.rewards)

    n_frames = int(round(scenario.duration / DECISION_DT))
    events = list(scenario.script)
    transitions: list[TransitionRecord] = []
    cues_log: list[str] = []
    mae_accum = 0.0
    reward_sums = {"total": 0.0, "imitation": 0.0, "regularization": 0.0,
                   "survival": 0.0}
    terminated = False
    terminated_at = None
    deadline_misses = 0
    prev_qd = plant.qd.copy()
    a0 = runtime.prev_action.copy()
    action_hist = [a0.copy(), a0.copy()]  # [a_{t-1}, a_{t-2}]
    prev_mode = runtime.modes.mode
    wall_start = _time.perf_counter()

    try:
        for i in range(n_frames):
            t = i * DECISION_DT
            phi_before = (runtime.modes.phase.phi
                          if runtime.modes.phase is not None else None)
            while events and events[0].t <= t + 1e-9:
                _apply_event(events.pop(0), runtime, engine, t, bundle.ranges,
                             mapping)
                if runtime.modes.mode != prev_mode:
                    phi_now = (runtime.modes.phase.phi
                               if runtime.modes.phase is not None else None)
                    transitions.append(TransitionRecord(
                        t, prev_mode, runtime.modes.mode, phi_before, phi_now))
                    prev_mode = runtime.modes.mode

            decision = runtime.decision(observables, t)
            if decision.mode != prev_mode:
                transitions.append(TransitionRecord(
                    t, prev_mode, decision.mode, phi_before, decision.phi))
                prev_mode = decision.mode
            cues_log.extend(decision.cues)

            for k in range(1, INNER_STEPS + 1):
                t_k = t + k * SIM_DT
                setpoint = runtime.actuation(k)
                wrenches = disturbances.step(t_k)
                extra = (joint_torques_from_wrenches(model, wrenches)
                         if wrenches else None)
                plant.step(setpoint, gain_scale=decision.gain_scale,
                           extra_tau=extra)
                if fast_writer is not None:
                    fast_writer.write(t_k, setpoint, plant.q, plant.qd,
                                      plant.last_tau, plant.last_tau_m)

            reference = decision.reference
            q_hat = plant.measure()
            mae_accum += float(np.mean(np.abs(plant.q - reference.joint_pos)))

            reward = None
            if scenario.rewards:
                sim_state = KinematicTargetState(
                    position=reference.position, orientation=reference.orientation,
                    lin_vel=reference.lin_vel, ang_vel=reference.ang_vel,
                    joint_pos=plant.q.copy(), joint_vel=plant.qd.copy(),
                    contact_left=reference.contact_left,
                    contact_right=reference.contact_right)
                qdd = (plant.qd - prev_qd) / DECISION_DT
                reward, term = evaluate(
                    model, sim_state, reference, plant.last_tau, qdd,
                    decision.action, action_hist[0], action_hist[1],
                    bundle.weights, phi=decision.phi)
                reward_sums["total"] += reward.total
                reward_sums["imitation"] += reward.imitation_total
                reward_sums["regularization"] += reward.regularization_total
                reward_sums["survival"] += reward.survival_total
                if term:
                    terminated = True
                    terminated_at = t

            prev_qd = plant.qd.copy()
            action_hist = [decision.action.copy(), action_hist[0]]

            cmd_row = _command_row(decision)
            frame = runtime.frame
            if decision_writer is not None:
                decision_writer.write(
                    t, decision.mode, decision.phi, cmd_row,
                    (reference.position[0], reference.position[1],
                     quat_yaw(reference.orientation)),
                    (frame.x, frame.y, frame.heading),
                    decision.action, decision.setpoints, reference.joint_pos,
                    plant.q, plant.qd, plant.last_tau, reward)

            if telemetry_sink is not None:
                telemetry_sink(_telemetry_frame(t, decision, runtime, plant,
                                                reward, deadline_misses))

            observables = RobotObservables(
                position=reference.position, orientation=reference.orientation,
                lin_vel=reference.lin_vel, ang_vel=reference.ang_vel,
                joint_pos=q_hat, joint_vel=plant.qd.copy(),
            )

            if scenario.realtime:
                deadline = wall_start + (i + 1) * DECISION_DT
                now = _time.perf_counter()
                if now < deadline:
                    _time.sleep(deadline - now)
                else:
                    deadline_misses += min(INNER_STEPS,
                                           int(np.ceil((now - deadline) / SIM_DT)))

            if terminated:
                break
    finally:
        if fast_writer is not None:
            fast_writer.close()
        if decision_writer is not None:
            decision_writer.close()

    ticks = i + 1 if n_frames else 0
    return EpisodeResult(
        name=scenario.name, duration=ticks * DECISION_DT, ticks=ticks,
        terminated=terminated, terminated_at=terminated_at,
        mae=mae_accum / max(ticks, 1),
        reward_total=reward_sums["total"],
        reward_means={k: v / max(ticks, 1) for k, v in reward_sums.items()},
        transitions=transitions, deadline_misses=deadline_misses,
        fast_trace=str(fast_path) if fast_path else None,
        decision_trace=str(decision_path) if decision_path else None,
        cues=cues_log,
    )


def _command_row(decision):
    if decision.periodic is not None:
        c = decision.periodic
        return (c.velocity[0], c.velocity[1], c.yaw_rate, 0.0, c.dh_head)
    if decision.perpetual is not None:
        c = decision.perpetual
        return (0.0, 0.0, 0.0, c.h_torso, c.dh_head)
    return (0.0, 0.0, 0.0, 0.0, 0.0)


def _telemetry_frame(t, decision, runtime: ControlRuntime, plant: Plant,
                     reward, deadline_misses) -> TelemetryFrame:
    from ..model import forward_kinematics
    from ..model.state import RobotConfig
    ref = decision.reference
    config = RobotConfig(position=ref.position, orientation=ref.orientation,
                         q=plant.q)
    poses = forward_kinematics(runtime.model, config)
    links = {}
    for name in ("torso", "head", "head_site", "left_sole", "right_sole",
                 "l_foot", "r_foot", "l_shank", "r_shank", "l_thigh", "r_thigh",
                 "lower_neck"):
        tf = poses[name]
        links[name] = {"pos": [float(v) for v in tf.pos],
                       "quat": [float(v) for v in tf.quat]}
    cmd = _command_row(decision)
    last = runtime.engine.last_output
    show = (last.command.show.to_vector() if last is not None else np.zeros(11))
    trigger = last.trigger if last is not None else None
    return TelemetryFrame(
        t=t, mode=decision.mode, phi=decision.phi,
        command={"vx": cmd[0], "vy": cmd[1], "wz": cmd[2],
                 "h_torso": cmd[3], "dh_head": cmd[4]},
        show=[float(v) for v in show],
        joint_pos=[float(v) for v in plant.q],
        joint_vel=[float(v) for v in plant.qd],
        joint_torque=[float(v) for v in plant.last_tau],
        setpoint=[float(v) for v in decision.setpoints],
        reference_q=[float(v) for v in ref.joint_pos],
        path_frame={"x": runtime.frame.x, "y": runtime.frame.y,
                    "heading": runtime.frame.heading},
        links=links,
        measured_velocity={"vx": float(ref.lin_vel[0]), "vy": float(ref.lin_vel[1]),
                           "wz": float(ref.ang_vel[2])},
        reward=None if reward is None else {
            "total": reward.total, "imitation": reward.imitation_total,
            "regularization": reward.regularization_total,
            "survival": reward.survival_total},
        cues=list(decision.cues), trigger=trigger,
        deadline_misses=deadline_misses,
    )
