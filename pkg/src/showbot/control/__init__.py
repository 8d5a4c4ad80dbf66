from .features import (
    EPISODIC_FEATURE_DIM,
    N_RBF,
    PERIODIC_FEATURE_DIM,
    RBF_WIDTH,
    episodic_features,
    normalize_inputs,
    periodic_features,
    phase_features,
)
from .observation import (
    OBSERVATION_DIM,
    OBSERVATION_LAYOUT_VERSION,
    Observation,
    RobotObservables,
    build_observation,
    default_observation_ranges,
)
from .policy import PolicyNet, StubPolicy, elu
from .actions import (
    ACTUATION_RATE,
    DECISION_RATE,
    FILTER_CUTOFF,
    INNER_STEPS,
    ActionPipeline,
    action_to_setpoints,
    filter_alpha,
)
from .modes import (
    EPISODIC_MODE,
    MODES,
    MOTION_STOP,
    STANDING,
    STOP_FREEZE_DELAY,
    STOP_GAIN_FACTOR,
    WALKING,
    ModeMachine,
    TransitionError,
)
from .runtime import ControlRuntime, DecisionResult, RuntimeConfig

__all__ = [
    "EPISODIC_FEATURE_DIM",
    "N_RBF",
    "PERIODIC_FEATURE_DIM",
    "RBF_WIDTH",
    "episodic_features",
    "normalize_inputs",
    "periodic_features",
    "phase_features",
    "OBSERVATION_DIM",
    "OBSERVATION_LAYOUT_VERSION",
    "Observation",
    "RobotObservables",
    "build_observation",
    "default_observation_ranges",
    "PolicyNet",
    "StubPolicy",
    "elu",
    "ACTUATION_RATE",
    "DECISION_RATE",
    "FILTER_CUTOFF",
    "INNER_STEPS",
    "ActionPipeline",
    "action_to_setpoints",
    "filter_alpha",
    "EPISODIC_MODE",
    "MODES",
    "MOTION_STOP",
    "STANDING",
    "STOP_FREEZE_DELAY",
    "STOP_GAIN_FACTOR",
    "WALKING",
    "ModeMachine",
    "TransitionError",
    "ControlRuntime",
    "DecisionResult",
    "RuntimeConfig",
]
