"""Live puppeteering session: a paced runtime loop plus client fan-out.

One thread owns all mutable runtime state. Clients talk to it exclusively
through a command queue (motion stop bypasses the queue order) and receive
decimated telemetry snapshots through per-client bounded queues with a
drop-oldest policy.
"""

from __future__ import annotations

import dataclasses
import itertools
import threading
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..animation.joystick import JoystickInput
from ..control.observation import RobotObservables
from ..control.runtime import ControlRuntime
from ..model import nominal_pose
from ..model.state import KinematicTargetState
from ..sim.dynamics import SIM_DT
from ..sim.episode import DECISION_DT, INNER_STEPS, Plant, RuntimeBundle, build_runtime
from ..sim.episode import _telemetry_frame

TELEMETRY_RATE = 30.0  # Hz
CLIENT_QUEUE_LIMIT = 8


@dataclass
class _Client:
    id: int
    role: str
    deliver: object            # callable(dict) invoked from the runtime thread
    backlog: deque = field(default_factory=lambda: deque(maxlen=CLIENT_QUEUE_LIMIT))


class LiveSession:
    """Runs the control runtime in real time for remote puppeteering."""

    def __init__(self, bundle: RuntimeBundle, seed: int = 0, realtime: bool = True,
                 telemetry_rate: float = TELEMETRY_RATE):
        self.bundle = bundle
        self.realtime = realtime
        self.telemetry_rate = telemetry_rate
        seeds = np.random.SeedSequence(seed).spawn(2)
        self.runtime: ControlRuntime = build_runtime(bundle)
        self.plant = Plant(bundle, np.random.default_rng(seeds[0]),
                           np.random.default_rng(seeds[1]))
        self._commands: deque = deque()
        self._stop_flag = threading.Event()
        self._clients: dict[int, _Client] = {}
        self._client_ids = itertools.count(1)
        self._operator_id: int | None = None
        self._lock = threading.Lock()
        self._thread: threading.Thread | None = None
        self.t = 0.0
        self.deadline_misses = 0
        self.last_frame: dict | None = None

    # ----------------------------------------------------------------- clients
    def register(self, deliver, role: str = "observer") -> tuple[int, str]:
        with self._lock:
            client_id = next(self._client_ids)
            granted = "observer"
            if role == "operator" and self._operator_id is None:
                self._operator_id = client_id
                granted = "operator"
            self._clients[client_id] = _Client(client_id, granted, deliver)
            return client_id, granted

    def unregister(self, client_id: int):
        with self._lock:
            self._clients.pop(client_id, None)
            if self._operator_id == client_id:
                self._operator_id = None

    def is_operator(self, client_id: int) -> bool:
        with self._lock:
            return self._operator_id == client_id

    # ---------------------------------------------------------------- commands
    def submit(self, client_id: int, message) -> str | None:
        """Queue a command; returns an error string when rejected."""
        kind = message.type
        if kind == "motion_stop":
            # Safety path: allowed from any session, processed first.
            self._commands.appendleft((client_id, message))
            return None
        if not self.is_operator(client_id):
            return "command rejected: not the operator session"
        self._commands.append((client_id, message))
        return None

    def _apply(self, message):
        runtime = self.runtime
        engine = runtime.engine
        kind = message.type
        if kind == "joystick":
            engine.set_joystick(JoystickInput(
                lx=message.lx, ly=message.ly, rx=message.rx, ry=message.ry,
                l2=message.l2, r2=message.r2, dpad_x=message.dpad_x,
                dpad_y=message.dpad_y, r1_held=message.r1_held))
        elif kind == "trigger":
            engine.trigger(message.name, self.t)
        elif kind == "episodic":
            runtime.start_episodic(message.name, now=self.t)
        elif kind == "transition":
            runtime.request_transition(message.target, now=self.t)
        elif kind == "motion_stop":
            runtime.motion_stop(now=self.t)
        elif kind == "reset_pose":
            runtime.reset_pose(now=self.t)
        elif kind == "cancel":
            engine.cancel_triggers(self.t)
        elif kind == "flag":
            setattr(engine, f"{message.name}_on", message.on)
        elif kind == "audio":
            engine.trigger_cue(message.cue)

    # ------------------------------------------------------------------- loop
    def start(self):
        if self._thread is not None:
            return
        self._stop_flag.clear()
        self._thread = threading.Thread(target=self._run, daemon=True,
                                        name="showbot-live")
        self._thread.start()

    def stop(self):
        self._stop_flag.set()
        if self._thread is not None:
            self._thread.join(timeout=2.0)
            self._thread = None

    def _run(self):
        model = self.bundle.model
        nominal = nominal_pose(model)
        reference = KinematicTargetState.rest(nominal.position, nominal.orientation,
                                              nominal.q)
        observables = RobotObservables(
            position=reference.position, orientation=reference.orientation,
            lin_vel=np.zeros(3), ang_vel=np.zeros(3),
            joint_pos=self.plant.q.copy(), joint_vel=self.plant.qd.copy())
        self.runtime.reset(observables, t=0.0)
        frame_index = 0
        last_emit = -1.0
        wall_start = time.perf_counter()

        while not self._stop_flag.is_set():
            t = frame_index * DECISION_DT
            self.t = t
            while self._commands:
                _, message = self._commands.popleft()
                try:
                    self._apply(message)
                except Exception as e:  # report, never crash the loop
                    self._broadcast({"type": "error", "message": str(e)})

            decision = self.runtime.decision(observables, t)
            for k in range(1, INNER_STEPS + 1):
                setpoint = self.runtime.actuation(k)
                self.plant.step(setpoint, gain_scale=decision.gain_scale)
            reference = decision.reference
            q_hat = self.plant.measure()
            observables = RobotObservables(
                position=reference.position, orientation=reference.orientation,
                lin_vel=reference.lin_vel, ang_vel=reference.ang_vel,
                joint_pos=q_hat, joint_vel=self.plant.qd.copy())

            if t - last_emit >= 1.0 / self.telemetry_rate - 1e-9:
                frame = _telemetry_frame(t, decision, self.runtime, self.plant,
                                         None, self.deadline_misses)
                payload = {"type": "telemetry", **dataclasses.asdict(frame)}
                self.last_frame = payload
                self._broadcast(payload)
                last_emit = t

            frame_index += 1
            if self.realtime:
                deadline = wall_start + frame_index * DECISION_DT
                now = time.perf_counter()
                if now < deadline:
                    time.sleep(deadline - now)
                else:
                    self.deadline_misses += min(
                        INNER_STEPS, int(np.ceil((now - deadline) / SIM_DT)))

    def _broadcast(self, payload: dict):
        with self._lock:
            clients = list(self._clients.values())
        for client in clients:
            try:
                client.deliver(payload)
            except Exception:
                pass
