"""Reward evaluator: term values, schedule, termination, invariances."""

import numpy as np
import pytest

from showbot.geometry import quat_about_z, quat_from_euler_zyx
from showbot.model import default_model, nominal_pose
from showbot.model.state import KinematicTargetState
from showbot.rewards import (
    EmphasisWindow,
    RewardWeights,
    default_weights,
    effective_weights,
    evaluate,
    imitation_terms,
    regularization_terms,
    scheduled_weight,
    survival_and_termination,
)


@pytest.fixture(scope="module")
def model():
    return default_model()


@pytest.fixture(scope="module")
def weights():
    return default_weights()


def standing_state(model, **overrides):
    config = nominal_pose(model)
    state = KinematicTargetState.rest(config.position, config.orientation, config.q)
    for key, value in overrides.items():
        setattr(state, key, value)
    return state


def test_zero_error_terms(model, weights):
    w = effective_weights(weights, None, [])
    sim = standing_state(model)
    target = standing_state(model)
    out = imitation_terms(model, sim, target, w)
    for term in ("torso_position_xy", "torso_orientation", "linear_velocity_xy",
                 "linear_velocity_z", "angular_velocity_xy", "angular_velocity_z"):
        assert out.values[term] == 1.0
    for term in ("leg_joint_positions", "neck_joint_positions",
                 "leg_joint_velocities", "neck_joint_velocities"):
        assert out.values[term] == 0.0
    assert out.values["contact"] == 2.0


def test_position_error_exponential(model, weights):
    # 0.1 m torso offset: exp(-200 * 0.01) = exp(-2).
    w = effective_weights(weights, None, [])
    sim = standing_state(model)
    sim.position = sim.position + np.array([0.1, 0.0, 0.0])
    out = imitation_terms(model, sim, standing_state(model), w)
    assert abs(out.values["torso_position_xy"] - np.exp(-2.0)) < 1e-12


def test_contact_mismatch(model, weights):
    w = effective_weights(weights, None, [])
    sim = standing_state(model, contact_left=False)
    out = imitation_terms(model, sim, standing_state(model), w)
    assert out.values["contact"] == 1.0


def test_orientation_term_symmetric(model, weights):
    w = effective_weights(weights, None, [])
    sim = standing_state(model, orientation=quat_from_euler_zyx(0.3, 0.1, -0.2))
    target = standing_state(model, orientation=quat_from_euler_zyx(-0.1, 0.0, 0.1))
    a = imitation_terms(model, sim, target, w).values["torso_orientation"]
    b = imitation_terms(model, target, sim, w).values["torso_orientation"]
    assert abs(a - b) < 1e-12
    assert 0.0 < a < 1.0


def test_exp_terms_bounded(model, weights):
    rng = np.random.default_rng(0)
    w = effective_weights(weights, None, [])
    for _ in range(20):
        sim = standing_state(model)
        sim.position = sim.position + rng.normal(scale=0.2, size=3)
        sim.lin_vel = rng.normal(scale=1.0, size=3)
        sim.ang_vel = rng.normal(scale=1.0, size=3)
        sim.orientation = quat_from_euler_zyx(*rng.uniform(-1, 1, 3))
        out = imitation_terms(model, sim, standing_state(model), w)
        for term in ("torso_position_xy", "torso_orientation", "linear_velocity_xy",
                     "linear_velocity_z", "angular_velocity_xy", "angular_velocity_z"):
            assert 0.0 < out.values[term] <= 1.0


def test_regularization_zero_for_constant_history(model, weights):
    w = effective_weights(weights, None, [])
    a = np.full(14, 0.3)
    out = regularization_terms(model, np.zeros(14), np.zeros(14), a, a, a, w)
    assert all(v == 0.0 for v in out.values.values())


def test_leg_action_rate_value(model, weights):
    # Step of 0.1 on one leg joint: term -0.01, weighted -0.015.
    w = effective_weights(weights, None, [])
    a1 = np.zeros(14)
    a0 = np.zeros(14)
    a1[0] = 0.1
    out = regularization_terms(model, np.zeros(14), np.zeros(14), a1, a0, a0, w)
    assert abs(out.values["leg_action_rate"] - (-0.01)) < 1e-12
    assert abs(out.weighted("leg_action_rate") - (-0.015)) < 1e-12


def test_survival_standing(model, weights):
    w = effective_weights(weights, None, [])
    out, terminated = survival_and_termination(model, standing_state(model), w)
    assert not terminated
    assert out.weighted("survival") == 20.0


def test_termination_on_low_torso(model, weights):
    w = effective_weights(weights, None, [])
    sim = standing_state(model)
    sim.position = np.array([0.0, 0.0, 0.05])
    out, terminated = survival_and_termination(model, sim, w)
    assert terminated
    assert out.weighted("survival") == 0.0


def test_termination_on_self_collision(model, weights):
    w = effective_weights(weights, None, [])
    sim = standing_state(model)
    q = sim.joint_pos.copy()
    q[model.joint_index["NF"]] = model.joints[model.joint_index["NF"]].lower
    q[model.joint_index["NP"]] = model.joints[model.joint_index["NP"]].upper
    sim.joint_pos = q
    _, terminated = survival_and_termination(model, sim, w)
    assert terminated


def test_scheduled_weight():
    window = EmphasisWindow(term="angular_velocity_xy", phi_start=0.2,
                            phi_end=0.4, extra=1.5)
    assert scheduled_weight(0.1, 0.5, window) == 0.5
    assert scheduled_weight(0.3, 0.5, window) == 2.0
    assert scheduled_weight(0.2, 0.5, window) == 0.5  # strict inequality
    assert scheduled_weight(0.4, 0.5, window) == 0.5
    assert scheduled_weight(0.3, 0.5, None) == 0.5


def test_zero_extra_schedule_is_identity(weights):
    window = EmphasisWindow(term="contact", phi_start=0.1, phi_end=0.9, extra=0.0)
    for phi in (0.05, 0.5, 0.95):
        assert scheduled_weight(phi, weights.contact, window) == weights.contact


def test_total_reward_zero_error(model, weights):
    sim = standing_state(model)
    a = np.zeros(14)
    breakdown, terminated = evaluate(model, sim, standing_state(model),
                                     np.zeros(14), np.zeros(14), a, a, a, weights)
    assert not terminated
    # Sum over the term table at the zero-error point: six exponentials at
    # their weights (1+1+1+1+0.5+0.5) plus the two contact matches and
    # survival.
    assert abs(breakdown.total - 27.0) < 1e-12
    assert abs(breakdown.imitation_total - 7.0) < 1e-12
    assert breakdown.regularization_total == 0.0
    assert breakdown.survival_total == 20.0


def test_penalties_strictly_decrease_total(model, weights):
    sim = standing_state(model)
    a = np.zeros(14)
    base, _ = evaluate(model, sim, standing_state(model), np.zeros(14),
                       np.zeros(14), a, a, a, weights)
    tau = np.zeros(14)
    tau[3] = 2.0
    worse, _ = evaluate(model, sim, standing_state(model), tau,
                        np.zeros(14), a, a, a, weights)
    assert worse.total < base.total


def test_rigid_transform_invariance(model, weights):
    rng = np.random.default_rng(3)
    sim = standing_state(model)
    sim.position = sim.position + rng.normal(scale=0.05, size=3)
    sim.lin_vel = rng.normal(scale=0.3, size=3)
    sim.ang_vel = rng.normal(scale=0.3, size=3)
    target = standing_state(model)
    a = np.zeros(14)
    base, _ = evaluate(model, sim, target, np.zeros(14), np.zeros(14), a, a, a,
                       weights)

    shift, heading = np.array([1.3, -0.4]), 0.9
    sim_t = sim.transformed(shift, heading)
    target_t = target.transformed(shift, heading)
    moved, _ = evaluate(model, sim_t, target_t, np.zeros(14), np.zeros(14),
                        a, a, a, weights)
    assert abs(moved.total - base.total) < 1e-9


def test_weights_must_be_non_negative():
    with pytest.raises(ValueError):
        RewardWeights(contact=-1.0)
