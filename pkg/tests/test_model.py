"""Robot model: layout invariants, FK chain, limits, collision proxies."""

import numpy as np
import pytest

from showbot.geometry import Transform, quat_from_axis_angle, quat_from_euler_zyx
from showbot.model import (
    RobotConfig,
    default_model,
    forward_kinematics,
    head_self_collision,
    head_torso_clearance,
    nominal_pose,
    solve_leg,
    solve_neck,
)
from showbot.model.kinematics import sphere_box_distance


@pytest.fixture(scope="module")
def model():
    return default_model()


def test_layout_invariants(model):
    assert model.n_joints == 14
    names = [j.name for j in model.joints]
    assert len(set(names)) == 14
    for n in ("NY", "NR", "NP"):
        assert model.joints[model.joint_index[n]].actuator == "XH540"
    for j in model.joints:
        if j.name[2:] in ("HY", "HR", "HP", "KP", "AP"):
            assert j.actuator in ("A1", "Go1")


def test_fk_nominal_feet(model):
    config = nominal_pose(model)
    poses = forward_kinematics(model, config)
    left, right = poses["left_sole"].pos, poses["right_sole"].pos
    assert np.isclose(left[1] - right[1], model.hip_spacing, atol=1e-9)
    assert abs(left[2]) < 1e-9 and abs(right[2]) < 1e-9
    assert np.isclose(poses["torso"].pos[2], model.torso_height_nominal)


def test_fk_neck_yaw_rotates_head(model):
    config = nominal_pose(model)
    config.q[model.joint_index["NY"]] = 0.5
    poses = forward_kinematics(model, config)
    head_x = poses["head"].rotate([1.0, 0.0, 0.0])
    assert np.isclose(np.arctan2(head_x[1], head_x[0]), 0.5, atol=1e-9)


def test_fk_mirror_symmetry(model):
    rng = np.random.default_rng(7)
    config = nominal_pose(model)
    q = config.q.copy()
    for base in ("HY", "HR", "HP", "KP", "AP"):
        li, ri = model.joint_index[f"L_{base}"], model.joint_index[f"R_{base}"]
        delta = rng.uniform(-0.2, 0.2)
        sign = -1.0 if base in ("HY", "HR") else 1.0
        q[li] += delta
        q[ri] += sign * delta
    config.q = q
    poses = forward_kinematics(model, config)
    left, right = poses["left_sole"].pos, poses["right_sole"].pos
    assert np.allclose(left * np.array([1.0, -1.0, 1.0]), right, atol=1e-9)


def test_fk_chain_against_two_link_oracle(model):
    # Pitch-only leg: closed-form planar two-link chain.
    config = nominal_pose(model)
    hp, kp = 0.4, -0.9
    i_hp, i_kp = model.joint_index["L_HP"], model.joint_index["L_KP"]
    i_ap = model.joint_index["L_AP"]
    config.q[:] = 0.0
    config.q[i_hp], config.q[i_kp], config.q[i_ap] = hp, kp, 0.0
    poses = forward_kinematics(model, config)
    l1 = l2 = model.thigh_length
    hip = np.array([0.0, 0.06, config.position[2]])
    expected = hip + np.array([
        -l1 * np.sin(hp) - l2 * np.sin(hp + kp),
        0.0,
        -l1 * np.cos(hp) - l2 * np.cos(hp + kp),
    ])
    assert np.allclose(poses["l_foot"].pos, expected, atol=1e-12)


def test_nominal_pose_properties(model):
    config = nominal_pose(model)
    assert np.allclose(model.clamp_to_limits(config.q), config.q)
    poses = forward_kinematics(model, config)
    hip = poses["torso"].apply(model.joints[model.joint_index["L_HY"]].origin)
    ankle = poses["l_foot"].pos
    assert np.isclose(np.linalg.norm(ankle - hip), model.leg_nominal_length, atol=1e-6)


def test_clamp_to_limits(model):
    q = nominal_pose(model).q
    assert np.allclose(model.clamp_to_limits(q), q)
    hot = q.copy()
    hot[0] = model.upper[0] + 10.0
    clamped = model.clamp_to_limits(hot)
    assert clamped[0] == model.upper[0]
    assert np.allclose(model.clamp_to_limits(clamped), clamped)


def test_sphere_box_distance_analytic():
    box = Transform(pos=np.zeros(3))
    half = np.array([1.0, 1.0, 1.0])
    assert np.isclose(sphere_box_distance(np.array([3.0, 0, 0]), 0.5, box, half), 1.5)
    assert sphere_box_distance(np.array([0.0, 0, 0]), 0.5, box, half) < 0
    assert np.isclose(sphere_box_distance(np.array([2.0, 2.0, 0.0]), 0.5, box, half),
                      np.sqrt(2.0) - 0.5)


def test_head_collision_nominal_false(model):
    assert not head_self_collision(model, nominal_pose(model))


def test_head_collision_tucked_true(model):
    config = nominal_pose(model)
    config.q[model.joint_index["NF"]] = model.joints[model.joint_index["NF"]].lower
    config.q[model.joint_index["NP"]] = model.joints[model.joint_index["NP"]].upper
    # Oracle: recompute the proxy distance from FK directly.
    poses = forward_kinematics(model, config)
    center = poses["head"].apply(model.head_proxy.center)
    box = poses["torso"].compose(Transform(pos=model.torso_proxy.center))
    local = box.inverse().apply(center)
    gap = np.linalg.norm(local - np.clip(local, -model.torso_proxy.half_extents,
                                         model.torso_proxy.half_extents))
    assert gap < model.head_proxy.radius
    assert head_self_collision(model, config)


def test_head_collision_positive_clearance_false(model):
    config = nominal_pose(model)
    config.q[model.joint_index["NY"]] = 0.8
    assert head_torso_clearance(model, config) > 0
    assert not head_self_collision(model, config)


def test_leg_ik_roundtrip_height_change(model):
    config = nominal_pose(model)
    poses = forward_kinematics(model, config)
    ankle_l = poses["l_foot"].pos.copy()
    for dh in (0.0, -0.05, 0.02):
        torso = Transform(pos=np.array([0.0, 0.0, model.torso_height_nominal + dh]))
        res = solve_leg(model, "L", torso, ankle_l, foot_yaw=0.0)
        check = config.copy()
        check.position[2] = model.torso_height_nominal + dh
        check.q[model.leg_indices[:5]] = res.q
        new_poses = forward_kinematics(model, check)
        assert np.allclose(new_poses["l_foot"].pos, ankle_l, atol=1e-6)
        assert not res.clamped


def test_leg_ik_torso_yaw_keeps_feet(model):
    config = nominal_pose(model)
    poses = forward_kinematics(model, config)
    for side, foot in (("L", "l_foot"), ("R", "r_foot")):
        ankle = poses[foot].pos.copy()
        torso = Transform(pos=np.array([0.0, 0.0, model.torso_height_nominal]),
                          quat=quat_from_axis_angle([0, 0, 1], 0.4))
        res = solve_leg(model, side, torso, ankle, foot_yaw=0.0)
        check = RobotConfig(position=torso.pos, orientation=torso.quat,
                            q=config.q.copy())
        idx = [model.joint_index[f"{side}_{j}"] for j in ("HY", "HR", "HP", "KP", "AP")]
        check.q[idx] = res.q
        new_poses = forward_kinematics(model, check)
        assert np.allclose(new_poses[foot].pos, ankle, atol=1e-9)
        fx = new_poses[foot].rotate([1.0, 0.0, 0.0])
        assert np.isclose(np.arctan2(fx[1], fx[0]), 0.0, atol=1e-9)


def test_leg_ik_unreachable_flags(model):
    torso = Transform(pos=np.array([0.0, 0.0, 0.8]))
    res = solve_leg(model, "L", torso, np.array([0.0, 0.06, 0.0]), foot_yaw=0.0)
    assert res.clamped


def test_neck_ik_nominal_fixed_point(model):
    config = nominal_pose(model)
    poses = forward_kinematics(model, config)
    torso = poses["torso"]
    res = solve_neck(model, torso, poses["head_site"].pos[2], poses["head"].quat)
    assert np.allclose(res.q, np.zeros(4), atol=1e-6)
    assert not res.clamped


def test_neck_ik_reaches_offsets(model):
    config = nominal_pose(model)
    poses = forward_kinematics(model, config)
    torso = poses["torso"]
    target_h = poses["head_site"].pos[2] - 0.03
    target_r = quat_from_euler_zyx(0.4, 0.2, -0.1)
    res = solve_neck(model, torso, target_h, target_r)
    check = config.copy()
    check.q[model.neck_indices] = res.q[:4] if len(res.q) == 4 else res.q
    new_poses = forward_kinematics(model, check)
    assert np.isclose(new_poses["head_site"].pos[2], target_h, atol=1e-9)
    from showbot.geometry import quat_angle_to
    assert quat_angle_to(new_poses["head"].quat, target_r) < 1e-9
    assert not res.clamped


def test_neck_ik_unreachable_height_clamps(model):
    config = nominal_pose(model)
    poses = forward_kinematics(model, config)
    res = solve_neck(model, poses["torso"], poses["head_site"].pos[2] + 0.5,
                     poses["head"].quat)
    assert res.clamped
