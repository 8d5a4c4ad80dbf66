from .layout import (
    ACTUATOR_TAGS,
    LEG_JOINT_NAMES,
    NECK_JOINT_NAMES,
    Joint,
    ModelError,
    RobotModel,
    default_model,
    load_model,
)
from .state import KinematicTargetState, RobotConfig
from .kinematics import (
    forward_kinematics,
    head_self_collision,
    head_torso_clearance,
    nominal_pose,
    sphere_box_distance,
)
from .ik import IKResult, solve_leg, solve_neck

__all__ = [
    "ACTUATOR_TAGS",
    "LEG_JOINT_NAMES",
    "NECK_JOINT_NAMES",
    "Joint",
    "ModelError",
    "RobotModel",
    "default_model",
    "load_model",
    "KinematicTargetState",
    "RobotConfig",
    "forward_kinematics",
    "head_self_collision",
    "head_torso_clearance",
    "nominal_pose",
    "sphere_box_distance",
    "IKResult",
    "solve_leg",
    "solve_neck",
]
