"""Control stack: features, observation, policy, action pipeline, modes."""

import numpy as np
import pytest

from showbot.control import (
    ActionPipeline,
    ModeMachine,
    PolicyNet,
    RobotObservables,
    StubPolicy,
    TransitionError,
    action_to_setpoints,
    build_observation,
    elu,
    episodic_features,
    filter_alpha,
    normalize_inputs,
    periodic_features,
    phase_features,
)
from showbot.control.modes import STANDING, WALKING, EPISODIC_MODE, STOP_FREEZE_DELAY
from showbot.geometry import quat_about_z, quat_mul, quat_rotate
from showbot.motion import PathFrame
from showbot.motion.gait import GaitSchedule


def test_periodic_features_values():
    assert np.allclose(phase_features(0.0, "periodic"), [0.0, 1.0, 0.0, 1.0])
    phi = 0.17
    a = phase_features(phi, "periodic")
    b = phase_features(phi + 0.5, "periodic")
    assert np.allclose(a[2:], b[2:], atol=1e-12)      # second harmonic equal
    assert np.allclose(a[:2], -b[:2], atol=1e-12)     # first harmonic negated


def test_episodic_features_center_peak():
    from showbot.control.features import RBF_CENTERS, RBF_WIDTH
    feats = episodic_features(float(RBF_CENTERS[7]))  # exactly the 8th center
    assert feats[7] == 1.0
    others = np.delete(feats, 7)
    assert np.all(others < 1.0)
    assert np.all(feats >= 0.0)
    # Locality: strictly positive near the active center, negligible far away.
    near = np.abs(RBF_CENTERS - RBF_CENTERS[7]) < 5 * RBF_WIDTH
    assert np.all(feats[near] > 0.0)
    assert feats[abs(RBF_CENTERS - RBF_CENTERS[7]) > 10 * RBF_WIDTH].max() < 1e-9


def test_phase_feature_periodicity():
    for phi in (0.3, 0.85):
        assert np.allclose(phase_features(phi, "periodic"),
                           phase_features(phi + 1.0, "periodic"), atol=1e-9)


def test_normalize_roundtrip():
    rng = np.random.default_rng(0)
    values = rng.normal(size=12)
    ranges = rng.uniform(0.5, 3.0, size=12)
    normalized = normalize_inputs(values, ranges)
    assert np.allclose(normalized * ranges, values)
    assert normalize_inputs(np.array([2.0]), np.array([2.0]))[0] == 1.0
    assert normalize_inputs(np.array([0.0]), np.array([2.0]))[0] == 0.0
    with pytest.raises(ValueError):
        normalize_inputs(np.zeros(3), np.array([1.0, -1.0, 1.0]))


def test_elu_oracle():
    # Scalar definition: x for x > 0, exp(x) - 1 otherwise.
    for x, expected in ((-1.0, np.exp(-1.0) - 1.0), (0.0, 0.0), (2.0, 2.0)):
        assert np.isclose(elu(np.array([x]))[0], expected, atol=1e-12)


def test_mlp_zero_weights_returns_bias():
    net = PolicyNet(
        weights=[np.zeros((4, 3)), np.zeros((3, 2))],
        biases=[np.zeros(3), np.array([0.5, -0.25])],
    )
    out = net.forward(np.array([1.0, -2.0, 3.0, 0.1]))
    assert np.allclose(out, [0.5, -0.25])


def test_mlp_single_channel_elu():
    net = PolicyNet(
        weights=[np.array([[1.0]]), np.array([[1.0]])],
        biases=[np.zeros(1), np.zeros(1)],
    )
    for x in (-1.0, 0.0, 2.0):
        expected = x if x > 0 else np.exp(x) - 1.0
        assert np.isclose(net.forward(np.array([x]))[0], expected)


def test_mlp_deterministic_and_shape_checked():
    net = PolicyNet.initialized(10, 4, rng=np.random.default_rng(3))
    x = np.random.default_rng(4).normal(size=10)
    assert np.array_equal(net.forward(x), net.forward(x))
    with pytest.raises(ValueError):
        net.forward(np.zeros(11))


def test_policy_save_load_roundtrip(tmp_path):
    net = PolicyNet.initialized(8, 3, rng=np.random.default_rng(9))
    net.save(tmp_path / "policy.npz")
    loaded = PolicyNet.load(tmp_path / "policy.npz")
    x = np.random.default_rng(1).normal(size=8)
    assert np.array_equal(net.forward(x), loaded.forward(x))
    assert loaded.meta["activation"] == "elu"


def test_policy_rejects_inconsistent_shapes():
    with pytest.raises(ValueError):
        PolicyNet(weights=[np.zeros((4, 3)), np.zeros((4, 2))],
                  biases=[np.zeros(3), np.zeros(2)])


def test_action_to_setpoints_affine():
    nominal = np.array([0.1, -0.2])
    scale = np.array([0.5, 0.5])
    measured = nominal.copy()
    dev = np.array([2.0, 2.0])
    assert np.allclose(action_to_setpoints(np.zeros(2), nominal, scale, measured, dev),
                       nominal)
    assert np.allclose(action_to_setpoints(np.ones(2), nominal, scale, measured, dev),
                       nominal + scale)


def test_action_clipped_to_measured_window():
    nominal = np.zeros(1)
    out = action_to_setpoints(np.array([10.0]), nominal, np.ones(1),
                              np.array([0.0]), np.array([2.267]))
    assert out[0] == pytest.approx(2.267)


def test_deviation_accommodates_peak_torque():
    # A1: tau_max / k_p = 34 / 15.
    assert 34.0 / 15.0 == pytest.approx(2.2667, abs=1e-4)


def test_stub_policy_inverse_pair():
    nominal = np.linspace(-0.5, 0.5, 14)
    scale = np.full(14, 0.7)
    stub = StubPolicy(nominal, scale)
    reference = nominal + np.random.default_rng(0).uniform(-0.5, 0.5, 14)
    action = stub(reference)
    out = action_to_setpoints(action, nominal, scale, reference, np.full(14, 10.0))
    assert np.allclose(out, reference, atol=1e-12)
    assert np.allclose(stub(nominal), 0.0)


def test_pipeline_dc_gain():
    pipe = ActionPipeline(n_joints=1)
    pipe.reset(np.zeros(1))
    pipe.push(np.array([1.0]))
    out = None
    for _ in range(100):
        pipe.push(np.array([1.0]))
        for k in range(1, 13):
            out = pipe.tick(k)
    assert abs(out[0] - 1.0) < 1e-6


def test_pipeline_filter_cutoff_attenuation():
    # 37.5 Hz sinusoid sampled at 600 Hz through the first-order stage:
    # steady-state amplitude should be within 2% of 1/sqrt(2).
    alpha = filter_alpha()
    f, fs = 37.5, 600.0
    n = 1200
    t = np.arange(n) / fs
    x = np.sin(2 * np.pi * f * t)
    y = np.zeros(n)
    state = 0.0
    for i in range(n):
        state += alpha * (x[i] - state)
        y[i] = state
    tail = slice(n // 2, None)
    basis = np.stack([np.sin(2 * np.pi * f * t[tail]), np.cos(2 * np.pi * f * t[tail])]).T
    coef, *_ = np.linalg.lstsq(basis, y[tail], rcond=None)
    amplitude = np.hypot(*coef)
    assert abs(amplitude - 1.0 / np.sqrt(2.0)) < 0.02 / np.sqrt(2.0)


def test_pipeline_step_monotone():
    pipe = ActionPipeline(n_joints=1)
    pipe.reset(np.zeros(1))
    pipe.push(np.array([0.0]))
    for k in range(1, 13):
        pipe.tick(k)
    pipe.push(np.array([1.0]))
    values = [pipe.tick(k)[0] for k in range(1, 13)]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_observation_invariance():
    rng = np.random.default_rng(5)
    q = rng.uniform(-0.5, 0.5, 14)
    qd = rng.normal(size=14)
    pos = np.array([0.3, -0.2, 0.32])
    quat = quat_about_z(0.4)
    v, w = rng.normal(size=3), rng.normal(size=3)
    frame = PathFrame(0.25, -0.15, 0.3)
    a1, a2 = rng.normal(size=14), rng.normal(size=14)

    state = RobotObservables(pos, quat, v, w, q, qd)
    base = build_observation(state, frame, a1, a2).to_vector()

    shift, yaw = np.array([2.0, -1.0, 0.0]), 1.2
    rot = quat_about_z(yaw)
    moved = RobotObservables(
        position=shift + quat_rotate(rot, pos),
        orientation=quat_mul(rot, quat),
        lin_vel=quat_rotate(rot, v),
        ang_vel=quat_rotate(rot, w),
        joint_pos=q, joint_vel=qd,
    )
    new_xy = shift[:2] + np.array([[np.cos(yaw), -np.sin(yaw)],
                                   [np.sin(yaw), np.cos(yaw)]]) @ frame.position
    moved_frame = PathFrame(new_xy[0], new_xy[1], frame.heading + yaw)
    transformed = build_observation(moved, moved_frame, a1, a2).to_vector()
    assert np.allclose(base, transformed, atol=1e-12)


def test_observation_trivials():
    q = np.zeros(14)
    state = RobotObservables(np.array([1.0, 2.0, 0.3]), quat_about_z(0.7),
                             np.zeros(3), np.zeros(3), q, q)
    frame = PathFrame(1.0, 2.0, 0.7)
    obs = build_observation(state, frame, q, q)
    assert np.allclose(obs.planar_pos, 0.0, atol=1e-12)
    assert np.allclose(obs.orientation, [1.0, 0.0, 0.0, 0.0], atol=1e-12)
    assert np.allclose(obs.lin_vel, 0.0) and np.allclose(obs.ang_vel, 0.0)


def make_machine():
    return ModeMachine(schedule=GaitSchedule())


def test_walk_start_phase_by_turn_direction():
    m = make_machine()
    sched = GaitSchedule()
    assert m.walk_start_phase(0.5) == sched.left_step_onset
    assert m.walk_start_phase(-0.5) == sched.right_step_onset
    assert m.walk_start_phase(0.0) == sched.left_step_onset


def test_walking_to_standing_waits_for_double_support():
    m = make_machine()
    m.request(WALKING, now=0.0, yaw_rate=0.5)
    assert m.mode == WALKING
    m.phase.rate = 1.25  # one cycle in 0.8 s
    m.request(STANDING, now=0.1)
    assert m.mode == WALKING and m.pending_standing
    # Step the phase; the switch may only happen crossing 0.45 or 0.95.
    phi = m.phase.phi
    t = 0.1
    from showbot.motion.phase import advance
    while m.mode == WALKING:
        prev = m.phase.phi
        m.phase = advance(m.phase, 0.02)
        t += 0.02
        phi_new = m.phase.phi
        m.advance(t, prev, phi_new, False)
        if m.mode == STANDING:
            onsets = GaitSchedule().double_support_onsets
            span = (phi_new - prev) % 1.0
            assert any((o - prev) % 1.0 <= span for o in onsets)
            break


def test_episodic_completion_forces_standing():
    m = make_machine()
    m.request(EPISODIC_MODE, now=0.0, clip_name="jump", clip_duration=2.0)
    assert m.mode == EPISODIC_MODE
    assert m.phase.rate == 0.5
    m.advance(0.02, 0.0, 0.5, False)
    assert m.mode == EPISODIC_MODE
    m.advance(2.02, 0.99, 1.0, True)
    assert m.mode == STANDING


def test_motion_stop_freezes_after_delay():
    m = make_machine()
    m.request(WALKING, now=0.0, yaw_rate=0.0)
    m.request("motion-stop", now=1.0)
    assert m.mode == STANDING and not m.frozen
    m.advance(1.2, None, None, False)
    assert not m.frozen
    m.advance(1.0 + STOP_FREEZE_DELAY, None, None, False)
    assert m.frozen
    with pytest.raises(TransitionError):
        m.request(WALKING, now=2.0)
    m.reset_pose(2.0)
    assert not m.frozen and m.resetting
    assert m.reset_progress(3.5) == 0.5
    m.advance(6.0, None, None, False)
    assert not m.resetting


def test_unknown_mode_rejected():
    m = make_machine()
    with pytest.raises(TransitionError):
        m.request("flying", now=0.0)
