"""FastAPI service wrapping the runtime: batch endpoints plus the live socket."""

from __future__ import annotations

import asyncio
import dataclasses
import json
from pathlib import Path

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from .. import __version__
from ..motion.clips import ClipError, load_clip
from ..motion.gait import GaitLibrary
from ..rewards import effective_weights, RewardBreakdown
from ..sim.bench import BenchProfile, run_bench, write_bench_csv
from ..sim.episode import RuntimeBundle, default_bundle, run_episode
from ..sim.scenario import EpisodeScenario, ScenarioError, ScriptEvent, load_scenario
from ..sim.trace import read_decision_trace
from .live import LiveSession
from .schemas import (
    BenchRequest,
    BenchResponse,
    ClientEnvelope,
    InfoResponse,
    RunRequest,
    RunResponse,
    ScenarioModel,
    ScoreRequest,
    ScoreResponse,
    TransitionModel,
    ValidateRequest,
    ValidateResponse,
    ValidationIssue,
)


def scenario_from_model(model: ScenarioModel) -> EpisodeScenario:
    script = [ScriptEvent(e.t, e.do, dict(e.args)) for e in model.script]
    return EpisodeScenario(
        seed=model.seed, duration=model.duration, initial_mode=model.initial_mode,
        realtime=model.realtime, rewards=model.rewards,
        randomize_actuators=model.randomize_actuators,
        measurement_noise=model.measurement_noise,
        disturbances=model.disturbances, script=script, name=model.name)


def score_trace(path: str | Path, bundle: RuntimeBundle) -> ScoreResponse:
    """Re-evaluate the recomputable reward terms over a decision trace."""
    data = read_decision_trace(path)
    model = bundle.model
    w = effective_weights(bundle.weights, None, [])
    n = data["t"].shape[0]
    q = np.stack([data[f"q_{i}"] for i in range(14)], axis=1)
    q_ref = np.stack([data[f"q_ref_{i}"] for i in range(14)], axis=1)
    qd = np.stack([data[f"qd_{i}"] for i in range(14)], axis=1)
    tau = np.stack([data[f"tau_{i}"] for i in range(14)], axis=1)
    action = np.stack([data[f"action_{i}"] for i in range(14)], axis=1)
    li, ni = model.leg_indices, model.neck_indices

    sums: dict[str, float] = {}
    total = 0.0
    for i in range(n):
        dq = q[i] - q_ref[i]
        terms = {
            "leg_joint_positions": -float(dq[li] @ dq[li]),
            "neck_joint_positions": -float(dq[ni] @ dq[ni]),
            "joint_torques": -float(tau[i] @ tau[i]),
            "contact": 2.0,
            "survival": 1.0,
        }
        if i >= 1:
            rate = action[i] - action[i - 1]
            terms["leg_action_rate"] = -float(rate[li] @ rate[li])
            terms["neck_action_rate"] = -float(rate[ni] @ rate[ni])
        if i >= 2:
            acc = action[i] - 2.0 * action[i - 1] + action[i - 2]
            terms["leg_action_acc"] = -float(acc[li] @ acc[li])
            terms["neck_action_acc"] = -float(acc[ni] @ acc[ni])
        for name, value in terms.items():
            sums[name] = sums.get(name, 0.0) + value
            total += value * w[name]
    return ScoreResponse(
        ticks=n, reward_total=total,
        reward_means={"total": total / max(n, 1)},
        term_means={k: v / max(n, 1) for k, v in sums.items()})


def _validate_yaml(path: Path):
    import yaml

    from ..actuators import load_params
    from ..animation.joystick import load_mapping
    from ..motion.commands import load_ranges
    from ..model import load_model
    from ..sim.bench import load_profile
    with open(path) as f:
        schema = (yaml.safe_load(f) or {}).get("schema", "")
    loaders = {
        "showbot-scenario/1": load_scenario,
        "showbot-bench/1": load_profile,
        "showbot-actuators/1": load_params,
        "showbot-commands/1": load_ranges,
        "showbot-robot-model/1": load_model,
        "showbot-joystick/1": load_mapping,
    }
    if schema == "showbot-bindings/1" or schema == "showbot-rewards/1":
        return  # structural load happens in the library/weights loaders
    if schema not in loaders:
        raise ValueError(f"unknown schema {schema!r}")
    loaders[schema](path)


def validate_paths(paths: list[str], bundle: RuntimeBundle) -> ValidateResponse:
    issues: list[ValidationIssue] = []
    checked = 0
    queue: list[Path] = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            if list(p.glob("gait_*.clip")):
                queue.append(p)  # whole gait library
            else:
                queue.extend(sorted(p.glob("*.clip")))
                queue.extend(sorted(p.glob("*.yaml")))
        else:
            queue.append(p)
    for p in queue:
        checked += 1
        try:
            if p.is_dir():
                GaitLibrary.load(p)
            elif p.suffix == ".clip":
                load_clip(p)
            elif p.suffix in (".yaml", ".yml"):
                _validate_yaml(p)
            else:
                issues.append(ValidationIssue(path=str(p),
                                              error="unknown artifact type"))
        except (ClipError, ScenarioError, ValueError, OSError) as e:
            issues.append(ValidationIssue(path=str(p), error=str(e)))
    return ValidateResponse(ok=not issues, checked=checked, issues=issues)


def create_app(bundle: RuntimeBundle | None = None, live: bool = True,
               live_seed: int = 0, realtime: bool = True,
               console_dir: str | None = None) -> FastAPI:
    from contextlib import asynccontextmanager

    state = {"bundle": bundle, "session": None}

    def get_bundle() -> RuntimeBundle:
        if state["bundle"] is None:
            state["bundle"] = default_bundle()
        return state["bundle"]

    @asynccontextmanager
    async def lifespan(_app):
        if live:
            session = LiveSession(get_bundle(), seed=live_seed, realtime=realtime)
            session.start()
            state["session"] = session
        yield
        session = state.get("session")
        if session is not None:
            session.stop()

    app = FastAPI(title="showbot", version=__version__, lifespan=lifespan)

    if console_dir is not None and Path(console_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/console", StaticFiles(directory=console_dir, html=True),
                  name="console")

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/info", response_model=InfoResponse)
    def info():
        b = get_bundle()
        return InfoResponse(
            version=__version__,
            observation_layout="showbot-obs/1",
            joints=[j.name for j in b.model.joints],
            clips=sorted(b.animations.clips),
            motions=sorted(b.motions))

    @app.post("/episodes/run", response_model=RunResponse)
    def run(request: RunRequest):
        b = get_bundle()
        try:
            scenario = scenario_from_model(request.scenario)
            result = run_episode(scenario, out_dir=request.out_dir, bundle=b)
        except ScenarioError as e:
            return JSONResponse(status_code=422, content={"detail": str(e)})
        return RunResponse(
            name=result.name, duration=result.duration, ticks=result.ticks,
            terminated=result.terminated, terminated_at=result.terminated_at,
            mae=result.mae, reward_total=result.reward_total,
            reward_means=result.reward_means,
            transitions=[TransitionModel(
                t=r.t, from_mode=r.from_mode, to_mode=r.to_mode,
                phi_before=r.phi_before, phi_after=r.phi_after)
                for r in result.transitions],
            deadline_misses=result.deadline_misses,
            fast_trace=result.fast_trace, decision_trace=result.decision_trace,
            cues=result.cues)

    @app.post("/bench/run", response_model=BenchResponse)
    def bench(request: BenchRequest):
        b = get_bundle()
        profile = BenchProfile(
            actuator=request.actuator, mode=request.mode,
            duration=request.duration, seed=request.seed,
            randomize=request.randomize, load_inertia=request.load_inertia,
            setpoint=request.setpoint, velocity=request.velocity)
        try:
            cols = run_bench(profile, b.actuator_params)
        except (KeyError, ValueError) as e:
            return JSONResponse(status_code=422, content={"detail": str(e)})
        csv_path = None
        if request.out_path:
            write_bench_csv(cols, request.out_path)
            csv_path = request.out_path
        return BenchResponse(
            rows=len(cols["t"]), columns=list(cols), csv_path=csv_path,
            peak_torque=float(np.abs(cols["tau"]).max()),
            stall_torque=float(np.abs(cols["tau"][np.abs(cols["qd"]) < 1e-9]).max()
                               if np.any(np.abs(cols["qd"]) < 1e-9) else 0.0))

    @app.post("/score", response_model=ScoreResponse)
    def score(request: ScoreRequest):
        b = get_bundle()
        try:
            return score_trace(request.trace_path, b)
        except (OSError, KeyError, ValueError) as e:
            return JSONResponse(status_code=422, content={"detail": str(e)})

    @app.post("/validate", response_model=ValidateResponse)
    def validate(request: ValidateRequest):
        return validate_paths(request.paths, get_bundle())

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket):
        await websocket.accept()
        session: LiveSession | None = state.get("session")
        if session is None:
            await websocket.send_json({"type": "error",
                                       "message": "live session not running"})
            await websocket.close()
            return

        loop = asyncio.get_running_loop()
        queue: asyncio.Queue = asyncio.Queue(maxsize=16)

        def deliver(payload: dict):
            def _put():
                if queue.full():
                    try:
                        queue.get_nowait()  # drop oldest, never block the loop
                    except asyncio.QueueEmpty:
                        pass
                queue.put_nowait(payload)
            loop.call_soon_threadsafe(_put)

        client_id, role = session.register(deliver, role="observer")
        await websocket.send_json({"type": "welcome", "role": role,
                                   "session": client_id})

        async def sender():
            while True:
                payload = await queue.get()
                await websocket.send_json(payload)

        send_task = asyncio.create_task(sender())
        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    envelope = ClientEnvelope(msg=json.loads(raw))
                except Exception as e:
                    await websocket.send_json({"type": "error",
                                               "message": f"malformed message: {e}"})
                    continue
                msg = envelope.msg
                if msg.type == "hello":
                    session.unregister(client_id)
                    client_id, role = session.register(deliver, role=msg.role)
                    await websocket.send_json({"type": "welcome", "role": role,
                                               "session": client_id})
                    continue
                error = session.submit(client_id, msg)
                if error is not None:
                    await websocket.send_json({"type": "error", "message": error})
                else:
                    await websocket.send_json({"type": "ack", "for": msg.type})
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            session.unregister(client_id)

    return app
