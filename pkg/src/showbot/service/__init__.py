from .app import create_app, scenario_from_model, score_trace, validate_paths
from .client import ServiceClient
from .live import LiveSession

__all__ = [
    "create_app",
    "scenario_from_model",
    "score_trace",
    "validate_paths",
    "ServiceClient",
    "LiveSession",
]
