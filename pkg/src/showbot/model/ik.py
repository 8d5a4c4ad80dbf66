"""Analytic inverse kinematics for the legs and neck.

Both limbs share the same yaw-roll-pitch structure, so orientation targets
reduce to a Z-X-Y Euler decomposition; positions fall out of planar two-link
geometry (legs) or a single-angle height equation (neck pitch).
Unreachable targets are clamped to the nearest reachable pose and flagged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import Transform, euler_zxy_from_matrix, quat_to_matrix, wrap_angle
from .layout import RobotModel


@dataclass
class IKResult:
    q: np.ndarray
    clamped: bool


def _rot_y(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _rot_x(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _rot_z(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _clamp_joint(value: float, lo: float, hi: float) -> tuple[float, bool]:
    clamped = min(max(value, lo), hi)
    return clamped, abs(clamped - value) > 1e-12


def solve_leg(model: RobotModel, side: str, torso: Transform,
              ankle_target: np.ndarray, foot_yaw: float,
              foot_pitch: float = 0.0) -> IKResult:
    """Joint angles placing the ankle at a world position with a flat foot.

    Satisfies ankle position exactly when reachable; foot yaw/pitch are met
    through the hip yaw and pitch chain (foot roll is free, matching the
    rounded soles without an ankle roll actuator).
    """
    names = [f"{side}_{j}" for j in ("HY", "HR", "HP", "KP", "AP")]
    joints = [model.joints[model.joint_index[n]] for n in names]
    hip = joints[0]
    l1, l2 = model.thigh_length, model.shank_length

    r_torso = quat_to_matrix(torso.quat)
    hip_world = torso.apply(hip.origin)
    r = r_torso.T @ (np.asarray(ankle_target, dtype=float) - hip_world)

    torso_yaw = np.arctan2(r_torso[1, 0], r_torso[0, 0])
    q_hy = wrap_angle(foot_yaw - torso_yaw)

    r1 = _rot_z(q_hy).T @ r
    q_hr = np.arctan2(r1[1], -r1[2])
    r2 = _rot_x(q_hr).T @ r1

    x, z = r2[0], r2[2]
    d = float(np.hypot(x, z))
    d_min, d_max = 0.02, l1 + l2 - 1e-9
    reach_clamped = d < d_min or d > d_max
    d = min(max(d, d_min), d_max)

    cos_gamma = (l1 * l1 + l2 * l2 - d * d) / (2.0 * l1 * l2)
    gamma = np.arccos(np.clip(cos_gamma, -1.0, 1.0))
    q_kp = -(np.pi - gamma)

    phi = np.arctan2(-x, -z)
    cos_delta = (l1 * l1 + d * d - l2 * l2) / (2.0 * l1 * d)
    delta = np.arccos(np.clip(cos_delta, -1.0, 1.0))
    q_hp = phi + delta

    # Remaining pitch so the foot reaches the commanded yaw/pitch.
    r_foot = _rot_z(foot_yaw) @ _rot_y(foot_pitch)
    m = (_rot_x(q_hr).T @ _rot_z(q_hy).T @ r_torso.T) @ r_foot
    theta_p = np.arctan2(-m[2, 0], m[2, 2])
    q_ap = theta_p - q_hp - q_kp

    q = np.array([q_hy, q_hr, q_hp, q_kp, q_ap], dtype=float)
    clamped = reach_clamped
    for i, joint in enumerate(joints):
        q[i], hit = _clamp_joint(q[i], joint.lower, joint.upper)
        clamped = clamped or hit
    return IKResult(q=q, clamped=clamped)


def solve_neck(model: RobotModel, torso: Transform, head_height: float,
               head_orientation: np.ndarray, seed_nf: float = 0.0,
               iterations: int = 60) -> IKResult:
    """Neck joint angles reaching a head-site height and orientation.

    ``head_orientation`` is the target world rotation matrix (or quaternion)
    of the head link. The lower-neck pitch carries the height; the three head
    joints realize the remaining orientation via Z-X-Y decomposition. The two
    are weakly coupled through the small head-link offsets, so a short fixed
    point iteration suffices.
    """
    head_orientation = np.asarray(head_orientation, dtype=float)
    if head_orientation.shape == (4,):
        r_target = quat_to_matrix(head_orientation)
    else:
        r_target = head_orientation

    nf = model.joints[model.joint_index["NF"]]
    ny = model.joints[model.joint_index["NY"]]
    nr = model.joints[model.joint_index["NR"]]
    np_j = model.joints[model.joint_index["NP"]]

    r_torso = quat_to_matrix(torso.quat)
    nf_world = torso.apply(nf.origin)
    w = r_torso.T @ np.array([0.0, 0.0, 1.0])
    rhs = float(head_height) - nf_world[2]

    def orientation_angles(q_nf):
        m = _rot_y(q_nf).T @ r_torso.T @ r_target
        q_ny, q_nr, q_np = euler_zxy_from_matrix(m)
        q_ny, c1 = _clamp_joint(q_ny, ny.lower, ny.upper)
        q_nr, c2 = _clamp_joint(q_nr, nr.lower, nr.upper)
        q_np, c3 = _clamp_joint(q_np, np_j.lower, np_j.upper)
        return q_ny, q_nr, q_np, (c1 or c2 or c3)

    def chain_offset(q_ny, q_nr, q_np):
        return ny.origin + _rot_z(q_ny) @ (
            nr.origin + _rot_x(q_nr) @ (np_j.origin + _rot_y(q_np) @ model.head_site))

    def solve_branch(sign):
        """Fixed-point iteration with the height-equation branch pinned."""
        q_nf = float(seed_nf)
        clamped = False
        for _ in range(iterations):
            q_ny, q_nr, q_np, orient_clamped = orientation_angles(q_nf)
            u = chain_offset(q_ny, q_nr, q_np)
            a = u[0] * w[0] + u[2] * w[2]
            b = u[2] * w[0] - u[0] * w[2]
            c = rhs - u[1] * w[1]
            amp = float(np.hypot(a, b))
            height_clamped = amp > 0.0 and abs(c) > amp
            c = min(max(c, -amp), amp)
            phi0 = np.arctan2(b, a)
            dq = np.arccos(np.clip(c / amp, -1.0, 1.0)) if amp > 0.0 else 0.0
            q_new, nf_clamped = _clamp_joint(wrap_angle(phi0 + sign * dq),
                                             nf.lower, nf.upper)
            converged = abs(q_new - q_nf) < 1e-14
            q_nf = q_new
            clamped = orient_clamped or nf_clamped or height_clamped
            if converged:
                break
        q_ny, q_nr, q_np, orient_clamped = orientation_angles(q_nf)
        clamped = clamped or orient_clamped
        # Achieved pose error from the clamped angles.
        u = chain_offset(q_ny, q_nr, q_np)
        height = nf_world[2] + float((_rot_y(q_nf) @ u) @ w)
        achieved = r_torso @ _rot_y(q_nf) @ _rot_z(q_ny) @ _rot_x(q_nr) @ _rot_y(q_np)
        rel = achieved.T @ r_target
        angle = float(np.arccos(np.clip(0.5 * (np.trace(rel) - 1.0), -1.0, 1.0)))
        error = abs(height - float(head_height)) + 0.15 * angle
        return np.array([q_ny, q_nr, q_np, q_nf]), clamped, error

    q_pos, clamped_pos, err_pos = solve_branch(+1.0)
    q_neg, clamped_neg, err_neg = solve_branch(-1.0)
    # Hysteresis: stay on the branch nearest the seed unless the other one
    # is clearly better, so tracking a moving target never flips branches.
    results = ((q_pos, clamped_pos, err_pos), (q_neg, clamped_neg, err_neg))
    near, far = sorted(results, key=lambda r: abs(r[0][3] - seed_nf))
    if far[2] + 0.05 < near[2]:
        return IKResult(q=far[0], clamped=far[1])
    return IKResult(q=near[0], clamped=near[1])
