from .show import SHOW_DIM, ShowFunctionState
from .blend import (
    T_ALPHA,
    T_BETA,
    AnimationCommand,
    CommandRateLimiter,
    RateLimits,
    blend,
    blend_ratios,
)
from .joystick import JoystickInput, JoystickMapping, default_mapping, load_mapping
from .library import AnimationLibrary, TriggerBindings, UnknownClipError, default_library
from .engine import EPISODIC, STANDING, WALKING, ActiveTrigger, AnimationEngine, EngineOutput

__all__ = [
    "SHOW_DIM",
    "ShowFunctionState",
    "T_ALPHA",
    "T_BETA",
    "AnimationCommand",
    "CommandRateLimiter",
    "RateLimits",
    "blend",
    "blend_ratios",
    "JoystickInput",
    "JoystickMapping",
    "default_mapping",
    "load_mapping",
    "AnimationLibrary",
    "TriggerBindings",
    "UnknownClipError",
    "default_library",
    "EPISODIC",
    "STANDING",
    "WALKING",
    "ActiveTrigger",
    "AnimationEngine",
    "EngineOutput",
]
