"""Forward kinematics and proxy-geometry predicates."""

from __future__ import annotations

import numpy as np

from ..geometry import Transform, quat_from_axis_angle
from .layout import RobotModel
from .state import RobotConfig


def forward_kinematics(model: RobotModel, config: RobotConfig,
                       base_height: float | None = None) -> dict[str, Transform]:
    """World pose of every link plus the sole and head sites.

    The torso pose comes from the config; ``base_height`` overrides the
    stored torso height when the caller tracks it separately.
    """
    poses: dict[str, Transform] = {"torso": config.torso_transform(base_height)}
    pending = list(model.joints)
    while pending:
        progressed = False
        for joint in list(pending):
            parent = poses.get(joint.parent)
            if parent is None:
                continue
            local = Transform(pos=joint.origin,
                              quat=quat_from_axis_angle(joint.axis, config.q[joint.index]))
            poses[joint.child] = parent.compose(local)
            pending.remove(joint)
            progressed = True
        if not progressed:
            missing = [j.name for j in pending]
            raise ValueError(f"unresolved kinematic chain for joints {missing}")
    for side, foot in (("left", "l_foot"), ("right", "r_foot")):
        poses[f"{side}_sole"] = poses[foot].compose(Transform(pos=model.sole_offset))
    poses["head_site"] = poses["head"].compose(Transform(pos=model.head_site))
    return poses


def nominal_pose(model: RobotModel) -> RobotConfig:
    """Nominal standing configuration at the nominal torso height."""
    return RobotConfig(
        position=np.array([0.0, 0.0, model.torso_height_nominal]),
        q=model.nominal_q(),
    )


def sphere_box_distance(center: np.ndarray, radius: float, box: Transform,
                        half_extents: np.ndarray) -> float:
    """Signed clearance between a sphere and an oriented box (< 0 overlaps)."""
    local = box.inverse().apply(center)
    clamped = np.clip(local, -half_extents, half_extents)
    outside = float(np.linalg.norm(local - clamped))
    if outside > 0.0:
        return outside - radius
    # Center inside the box: penetration depth to the nearest face.
    face_gap = float(np.min(half_extents - np.abs(local)))
    return -(face_gap + radius)


def head_torso_clearance(model: RobotModel, config: RobotConfig,
                         poses: dict[str, Transform] | None = None) -> float:
    if poses is None:
        poses = forward_kinematics(model, config)
    sphere_center = poses[model.head_proxy.link].apply(model.head_proxy.center)
    box = poses[model.torso_proxy.link].compose(Transform(pos=model.torso_proxy.center))
    return sphere_box_distance(sphere_center, model.head_proxy.radius, box,
                               model.torso_proxy.half_extents)


def head_self_collision(model: RobotModel, config: RobotConfig,
                        poses: dict[str, Transform] | None = None) -> bool:
    """True iff the head proxy sphere intersects the torso proxy box."""
    return head_torso_clearance(model, config, poses) <= 0.0
