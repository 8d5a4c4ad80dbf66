from .weights import (
    ALL_TERMS,
    IMITATION_TERMS,
    REGULARIZATION_TERMS,
    EmphasisWindow,
    RewardWeights,
    default_weights,
    effective_weights,
    load_weights,
    scheduled_weight,
)
from .evaluator import (
    RewardBreakdown,
    evaluate,
    imitation_terms,
    regularization_terms,
    survival_and_termination,
)

__all__ = [
    "ALL_TERMS",
    "IMITATION_TERMS",
    "REGULARIZATION_TERMS",
    "EmphasisWindow",
    "RewardWeights",
    "default_weights",
    "effective_weights",
    "load_weights",
    "scheduled_weight",
    "RewardBreakdown",
    "evaluate",
    "imitation_terms",
    "regularization_terms",
    "survival_and_termination",
]
