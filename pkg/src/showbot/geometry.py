"""Rotation and rigid-transform helpers shared across the runtime.

Quaternions are stored as numpy arrays [w, x, y, z], always unit norm.
Euler conventions used here:
  * zyx: intrinsic yaw (Z), pitch (Y), roll (X) -- command convention.
  * zxy: intrinsic Z, X, Y -- matches the yaw/roll/pitch joint chains of
    both the hips and the neck, so analytic IK reduces to this decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


def wrap_angle(a):
    """Wrap an angle (or array of angles) to (-pi, pi]."""
    wrapped = np.mod(-np.asarray(a) + np.pi, TWO_PI)
    return -(wrapped - np.pi)


def quat_identity():
    return np.array([1.0, 0.0, 0.0, 0.0])


def quat_normalize(q):
    q = np.asarray(q, dtype=float)
    n = np.linalg.norm(q)
    if n == 0.0:
        raise ValueError("cannot normalize zero quaternion")
    return q / n


def quat_mul(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ])


def quat_conj(q):
    return np.array([q[0], -q[1], -q[2], -q[3]])


def quat_rotate(q, v):
    """Rotate vector v by unit quaternion q."""
    w = q[0]
    u = q[1:]
    return v + 2.0 * np.cross(u, np.cross(u, v) + w * np.asarray(v, dtype=float))


def quat_from_axis_angle(axis, angle):
    axis = np.asarray(axis, dtype=float)
    n = np.linalg.norm(axis)
    if n == 0.0:
        return quat_identity()
    half = 0.5 * angle
    return np.concatenate(([np.cos(half)], np.sin(half) * axis / n))


def quat_about_z(angle):
    return np.array([np.cos(0.5 * angle), 0.0, 0.0, np.sin(0.5 * angle)])


def quat_to_matrix(q):
    w, x, y, z = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def matrix_to_quat(m):
    m = np.asarray(m, dtype=float)
    tr = np.trace(m)
    if tr > 0.0:
        s = np.sqrt(tr + 1.0) * 2.0
        q = np.array([
            0.25 * s,
            (m[2, 1] - m[1, 2]) / s,
            (m[0, 2] - m[2, 0]) / s,
            (m[1, 0] - m[0, 1]) / s,
        ])
    else:
        i = int(np.argmax(np.diag(m)))
        j, k = (i + 1) % 3, (i + 2) % 3
        s = np.sqrt(max(1.0 + m[i, i] - m[j, j] - m[k, k], 0.0)) * 2.0
        q = np.empty(4)
        q[0] = (m[k, j] - m[j, k]) / s
        q[1 + i] = 0.25 * s
        q[1 + j] = (m[j, i] + m[i, j]) / s
        q[1 + k] = (m[k, i] + m[i, k]) / s
    return quat_normalize(q)


def quat_from_euler_zyx(yaw, pitch, roll):
    """Intrinsic yaw-pitch-roll to quaternion."""
    qz = quat_from_axis_angle([0, 0, 1], yaw)
    qy = quat_from_axis_angle([0, 1, 0], pitch)
    qx = quat_from_axis_angle([1, 0, 0], roll)
    return quat_mul(quat_mul(qz, qy), qx)


def euler_zyx_from_quat(q):
    """Quaternion to intrinsic (yaw, pitch, roll)."""
    m = quat_to_matrix(q)
    pitch = np.arcsin(np.clip(-m[2, 0], -1.0, 1.0))
    yaw = np.arctan2(m[1, 0], m[0, 0])
    roll = np.arctan2(m[2, 1], m[2, 2])
    return np.array([yaw, pitch, roll])


def euler_zxy_from_matrix(m):
    """Decompose R = Rz(a) @ Rx(b) @ Ry(c); returns (a, b, c)."""
    b = np.arcsin(np.clip(m[2, 1], -1.0, 1.0))
    a = np.arctan2(-m[0, 1], m[1, 1])
    c = np.arctan2(-m[2, 0], m[2, 2])
    return a, b, c


def quat_yaw(q):
    """Heading (yaw of the intrinsic zyx decomposition) of a quaternion."""
    m = quat_to_matrix(q)
    return np.arctan2(m[1, 0], m[0, 0])


def quat_slerp(qa, qb, t):
    """Shortest-arc spherical interpolation between unit quaternions."""
    qa = np.asarray(qa, dtype=float)
    qb = np.asarray(qb, dtype=float)
    dot = float(np.dot(qa, qb))
    if dot < 0.0:
        qb = -qb
        dot = -dot
    if dot > 1.0 - 1e-12:
        return quat_normalize(qa + t * (qb - qa))
    theta = np.arccos(np.clip(dot, -1.0, 1.0))
    s = np.sin(theta)
    return (np.sin((1.0 - t) * theta) * qa + np.sin(t * theta) * qb) / s


def quat_rotvec(q):
    """Rotation-vector (axis * angle) log map of a unit quaternion."""
    q = np.asarray(q, dtype=float)
    if q[0] < 0.0:
        q = -q
    sin_half = np.linalg.norm(q[1:])
    if sin_half < 1e-12:
        return 2.0 * q[1:]
    angle = 2.0 * np.arctan2(sin_half, q[0])
    return angle * q[1:] / sin_half


def quat_boxminus(qa, qb):
    """Rotation vector of the relative rotation taking qb to qa."""
    return quat_rotvec(quat_mul(quat_conj(qb), qa))


def quat_angle_to(qa, qb):
    return float(np.linalg.norm(quat_boxminus(qa, qb)))


@dataclass
class Transform:
    """Rigid transform: rotation (unit quaternion) then translation."""

    pos: np.ndarray = field(default_factory=lambda: np.zeros(3))
    quat: np.ndarray = field(default_factory=quat_identity)

    def __post_init__(self):
        self.pos = np.asarray(self.pos, dtype=float).copy()
        self.quat = quat_normalize(self.quat)

    def compose(self, other: "Transform") -> "Transform":
        return Transform(
            pos=self.pos + quat_rotate(self.quat, other.pos),
            quat=quat_mul(self.quat, other.quat),
        )

    def inverse(self) -> "Transform":
        qinv = quat_conj(self.quat)
        return Transform(pos=-quat_rotate(qinv, self.pos), quat=qinv)

    def apply(self, point):
        return self.pos + quat_rotate(self.quat, np.asarray(point, dtype=float))

    def rotate(self, vec):
        return quat_rotate(self.quat, np.asarray(vec, dtype=float))


def rot2d(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])
