"""Pydantic request/response and wire-message models."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class ScriptEventModel(BaseModel):
    t: float
    do: str
    args: dict = Field(default_factory=dict)


class ScenarioModel(BaseModel):
    name: str = "episode"
    seed: int = 0
    duration: float = 5.0
    initial_mode: str = "standing"
    realtime: bool = False
    rewards: bool = True
    randomize_actuators: bool = True
    measurement_noise: bool = True
    disturbances: bool = False
    script: list[ScriptEventModel] = Field(default_factory=list)


class TransitionModel(BaseModel):
    t: float
    from_mode: str
    to_mode: str
    phi_before: Optional[float] = None
    phi_after: Optional[float] = None


class RunRequest(BaseModel):
    scenario: ScenarioModel
    out_dir: Optional[str] = None


class RunResponse(BaseModel):
    name: str
    duration: float
    ticks: int
    terminated: bool
    terminated_at: Optional[float]
    mae: float
    reward_total: float
    reward_means: dict
    transitions: list[TransitionModel]
    deadline_misses: int
    fast_trace: Optional[str]
    decision_trace: Optional[str]
    cues: list[str]


class BenchRequest(BaseModel):
    actuator: str = "A1"
    mode: Literal["locked", "inertial"] = "locked"
    duration: float = 2.0
    seed: int = 0
    randomize: bool = False
    load_inertia: float = 0.05
    setpoint: dict = Field(default_factory=lambda: {"type": "step", "value": 1.0,
                                                    "at": 0.1})
    velocity: dict = Field(default_factory=lambda: {"type": "ramp", "rate": 10.0})
    out_path: Optional[str] = None


class BenchResponse(BaseModel):
    rows: int
    columns: list[str]
    csv_path: Optional[str]
    peak_torque: float
    stall_torque: float


class ScoreRequest(BaseModel):
    trace_path: str


class ScoreResponse(BaseModel):
    ticks: int
    reward_total: float
    reward_means: dict
    term_means: dict


class ValidateRequest(BaseModel):
    paths: list[str]


class ValidationIssue(BaseModel):
    path: str
    error: str


class ValidateResponse(BaseModel):
    ok: bool
    checked: int
    issues: list[ValidationIssue]


class InfoResponse(BaseModel):
    name: str = "showbot"
    version: str
    observation_layout: str
    joints: list[str]
    clips: list[str]
    motions: list[str]


# ---------------------------------------------------------------- live wire
class HelloMsg(BaseModel):
    type: Literal["hello"] = "hello"
    role: Literal["operator", "observer"] = "observer"


class JoystickMsg(BaseModel):
    type: Literal["joystick"] = "joystick"
    lx: float = 0.0
    ly: float = 0.0
    rx: float = 0.0
    ry: float = 0.0
    l2: float = 0.0
    r2: float = 0.0
    dpad_x: int = 0
    dpad_y: int = 0
    r1_held: bool = False


class TriggerMsg(BaseModel):
    type: Literal["trigger"] = "trigger"
    name: str


class EpisodicMsg(BaseModel):
    type: Literal["episodic"] = "episodic"
    name: str


class TransitionMsg(BaseModel):
    type: Literal["transition"] = "transition"
    target: Literal["standing", "walking"]


class MotionStopMsg(BaseModel):
    type: Literal["motion_stop"] = "motion_stop"


class ResetPoseMsg(BaseModel):
    type: Literal["reset_pose"] = "reset_pose"


class CancelMsg(BaseModel):
    type: Literal["cancel"] = "cancel"


class FlagMsg(BaseModel):
    type: Literal["flag"] = "flag"
    name: Literal["lamp", "tuck", "background"]
    on: bool = True


class AudioMsg(BaseModel):
    type: Literal["audio"] = "audio"
    cue: str


ClientMessage = Union[HelloMsg, JoystickMsg, TriggerMsg, EpisodicMsg,
                      TransitionMsg, MotionStopMsg, ResetPoseMsg, CancelMsg,
                      FlagMsg, AudioMsg]


class ClientEnvelope(BaseModel):
    """Discriminated wrapper used to parse incoming messages."""

    msg: ClientMessage = Field(discriminator="type")
