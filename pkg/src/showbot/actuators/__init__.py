from .params import (
    HEAD,
    QUASI_DIRECT,
    ActuatorDraw,
    ActuatorParams,
    default_params,
    load_params,
    sample_draw,
)
from .model import (
    Actuator,
    friction,
    joint_torque,
    measured_position,
    pd_torque,
    torque_limits,
)

__all__ = [
    "HEAD",
    "QUASI_DIRECT",
    "ActuatorDraw",
    "ActuatorParams",
    "default_params",
    "load_params",
    "sample_draw",
    "Actuator",
    "friction",
    "joint_torque",
    "measured_position",
    "pd_torque",
    "torque_limits",
]
