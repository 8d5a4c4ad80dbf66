from .dynamics import SIM_DT, JointDynamics, estimate_load_inertia
from .disturbance import (
    DEFAULT_CATEGORIES,
    DisturbanceCategory,
    DisturbanceEvent,
    DisturbanceSchedule,
    joint_torques_from_wrenches,
)
from .scenario import EpisodeScenario, ScenarioError, ScriptEvent, load_scenario
from .trace import (
    DecisionTraceWriter,
    FastTraceWriter,
    TelemetryFrame,
    read_decision_trace,
    read_fast_trace,
)
from .episode import (
    EpisodeResult,
    Plant,
    RuntimeBundle,
    TransitionRecord,
    build_runtime,
    default_bundle,
    run_episode,
)
from .bench import BenchProfile, load_profile, run_bench, write_bench_csv

__all__ = [
    "SIM_DT",
    "JointDynamics",
    "estimate_load_inertia",
    "DEFAULT_CATEGORIES",
    "DisturbanceCategory",
    "DisturbanceEvent",
    "DisturbanceSchedule",
    "joint_torques_from_wrenches",
    "EpisodeScenario",
    "ScenarioError",
    "ScriptEvent",
    "load_scenario",
    "DecisionTraceWriter",
    "FastTraceWriter",
    "TelemetryFrame",
    "read_decision_trace",
    "read_fast_trace",
    "EpisodeResult",
    "Plant",
    "RuntimeBundle",
    "TransitionRecord",
    "build_runtime",
    "default_bundle",
    "run_episode",
    "BenchProfile",
    "load_profile",
    "run_bench",
    "write_bench_csv",
]
