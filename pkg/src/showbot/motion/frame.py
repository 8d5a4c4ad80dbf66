"""Planar path frame: the moving anchor for all motion references."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import rot2d, wrap_angle


@dataclass
class PathFrame:
    """Planar position plus heading, wrapped to (-pi, pi]."""

    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0

    def __post_init__(self):
        self.heading = float(wrap_angle(self.heading))

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def copy(self) -> "PathFrame":
        return PathFrame(self.x, self.y, self.heading)

    def to_world(self, planar_point) -> np.ndarray:
        return self.position + rot2d(self.heading) @ np.asarray(planar_point, dtype=float)

    def from_world(self, world_point) -> np.ndarray:
        return rot2d(-self.heading) @ (np.asarray(world_point, dtype=float)[:2] - self.position)


def mean_heading(a: float, b: float) -> float:
    return float(np.arctan2(0.5 * (np.sin(a) + np.sin(b)),
                            0.5 * (np.cos(a) + np.cos(b))))


def update_standing(frame: PathFrame, left_foot_xy, left_heading: float,
                    right_foot_xy, right_heading: float, dt: float,
                    time_constant: float = 1.0) -> PathFrame:
    """First-order convergence toward the feet average position and heading.

    The feet average is the fixed point; the offset decays by
    ``exp(-dt / time_constant)`` per step, along the shortest heading arc.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    target_xy = 0.5 * (np.asarray(left_foot_xy, dtype=float)[:2]
                       + np.asarray(right_foot_xy, dtype=float)[:2])
    target_heading = mean_heading(left_heading, right_heading)
    decay = float(np.exp(-dt / time_constant))
    new_xy = target_xy + (frame.position - target_xy) * decay
    err = wrap_angle(frame.heading - target_heading)
    return PathFrame(new_xy[0], new_xy[1], wrap_angle(target_heading + err * decay))


def update_walking(frame: PathFrame, velocity, yaw_rate: float, dt: float) -> PathFrame:
    """Integrate planar velocity commands expressed in the path frame."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    heading = wrap_angle(frame.heading + yaw_rate * dt)
    step = rot2d(heading) @ np.asarray(velocity, dtype=float) * dt
    return PathFrame(frame.x + step[0], frame.y + step[1], heading)


def project_to_torso(frame: PathFrame, torso_xy, torso_heading: float,
                     max_distance: float = 0.3, max_heading: float = 0.5) -> PathFrame:
    """Clamp the frame into a disk and heading cone around the torso state."""
    if max_distance <= 0.0:
        raise ValueError("max_distance must be positive")
    torso_xy = np.asarray(torso_xy, dtype=float)[:2]
    offset = frame.position - torso_xy
    dist = float(np.linalg.norm(offset))
    xy = frame.position
    if dist > max_distance:
        xy = torso_xy + offset * (max_distance / dist)
    err = float(wrap_angle(frame.heading - torso_heading))
    heading = frame.heading
    if abs(err) > max_heading:
        heading = wrap_angle(torso_heading + np.clip(err, -max_heading, max_heading))
    return PathFrame(xy[0], xy[1], heading)
