from .frame import PathFrame, project_to_torso, update_standing, update_walking
from .phase import EPISODIC, PERIODIC, PhaseSignal, advance
from .clips import CLIP_SCHEMA, ClipError, MotionClip, load_clip, save_clip
from .commands import (
    CommandRanges,
    PerpetualCommand,
    PeriodicCommand,
    default_ranges,
    load_ranges,
)
from .gait import GaitLibrary, GaitParams, GaitSchedule, synthesize_gait, unicycle_pose
from .generators import (
    GeneratedReference,
    NeckKinematics,
    PeriodicGenerator,
    PerpetualGenerator,
    gen_episodic,
)

__all__ = [
    "PathFrame",
    "project_to_torso",
    "update_standing",
    "update_walking",
    "EPISODIC",
    "PERIODIC",
    "PhaseSignal",
    "advance",
    "CLIP_SCHEMA",
    "ClipError",
    "MotionClip",
    "load_clip",
    "save_clip",
    "CommandRanges",
    "PerpetualCommand",
    "PeriodicCommand",
    "default_ranges",
    "load_ranges",
    "GaitLibrary",
    "GaitParams",
    "GaitSchedule",
    "synthesize_gait",
    "unicycle_pose",
    "GeneratedReference",
    "NeckKinematics",
    "PeriodicGenerator",
    "PerpetualGenerator",
    "gen_episodic",
]
