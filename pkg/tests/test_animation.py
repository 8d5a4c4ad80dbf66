"""Animation engine: blending, ramps, joystick mapping, extraction."""

import numpy as np
import pytest

from showbot.animation import (
    AnimationCommand,
    AnimationEngine,
    JoystickInput,
    ShowFunctionState,
    UnknownClipError,
    blend,
    blend_ratios,
    default_library,
    default_mapping,
)
from showbot.geometry import quat_about_z
from showbot.model import default_model, nominal_pose
from showbot.model.state import RobotConfig
from showbot.motion import default_ranges


@pytest.fixture(scope="module")
def model():
    return default_model()


@pytest.fixture(scope="module")
def library():
    return default_library()


@pytest.fixture
def engine(model, library):
    return AnimationEngine(model, library, default_mapping(), default_ranges())


def test_blend_ratios_checkpoints():
    assert blend_ratios(0.05, 2.0) == (0.5, pytest.approx(0.05 / 0.35))
    assert blend_ratios(0.5, 2.0) == (1.0, 1.0)
    assert blend_ratios(2.0, 2.0) == (0.0, 0.0)
    assert blend_ratios(0.0, 2.0) == (0.0, 0.0)
    # alpha midpoint of its ramp
    beta, alpha = blend_ratios(0.175, 2.0)
    assert alpha == pytest.approx(0.5)
    assert beta == 1.0


def test_blend_of_equal_commands_is_identity(model):
    config = nominal_pose(model)
    y = AnimationCommand(show=ShowFunctionState(), config=config)
    for beta, alpha in ((0.0, 0.0), (0.3, 0.7), (1.0, 1.0)):
        out = blend(y, y, beta, alpha)
        assert np.allclose(out.config.q, config.q)
        assert np.allclose(out.show.to_vector(), y.show.to_vector())


def test_blend_zero_weights_returns_background(model):
    bg = AnimationCommand(show=ShowFunctionState(),
                          config=nominal_pose(model))
    trig_config = nominal_pose(model)
    trig_config.q = trig_config.q + 0.3
    trig = AnimationCommand(show=ShowFunctionState(lamp=1.0), config=trig_config)
    out = blend(bg, trig, 0.0, 0.0)
    assert np.array_equal(out.config.q, bg.config.q)
    assert out.show.lamp == 0.0


def test_blend_slerp_yaw_midpoint(model):
    # Coplanar rotations: slerp reduces to angle interpolation.
    a = nominal_pose(model)
    b = nominal_pose(model)
    b.orientation = quat_about_z(0.4)
    out = blend(AnimationCommand(ShowFunctionState(), a),
                AnimationCommand(ShowFunctionState(), b), 0.5, 0.5)
    expected = quat_about_z(0.2)
    assert min(np.linalg.norm(out.config.orientation - expected),
               np.linalg.norm(out.config.orientation + expected)) < 1e-12


def test_background_loop_closure(engine):
    a = engine.background_at(0.0)
    b = engine.background_at(engine.library.background.duration)
    assert np.allclose(a.config.q, b.config.q, atol=1e-12)
    assert np.allclose(a.show.to_vector(), b.show.to_vector(), atol=1e-12)


def test_trigger_starts_continuous(engine):
    out_before = engine.tick(1.0, 0.02)
    engine.trigger("yes", 1.02)
    out_after = engine.tick(1.02, 0.02)
    dq = np.abs(out_after.command.config.q - out_before.command.config.q)
    assert dq.max() < 0.05
    assert out_after.trigger == "yes"


def test_trigger_unknown_name_lists_available(engine):
    with pytest.raises(UnknownClipError) as e:
        engine.trigger("nope", 0.0)
    assert "yes" in str(e.value)


def test_trigger_emits_audio_cue(engine):
    engine.trigger("yes", 0.5)
    out = engine.tick(0.5, 0.02)
    assert "cue_yes" in out.cues
    out = engine.tick(0.52, 0.02)
    assert out.cues == []


def test_cancel_ramps_out(engine):
    engine.trigger("scan", 0.0)
    engine.tick(0.0, 0.02)
    # Reach the plateau.
    trig = engine.active
    beta, alpha = trig.ratios(1.0)
    assert beta == 1.0 and alpha == 1.0
    engine.cancel_triggers(1.0)
    b0, a0 = trig.ratios(1.0)
    assert (b0, a0) == (1.0, 1.0)
    b1, a1 = trig.ratios(1.175)
    assert a1 == pytest.approx(0.5)
    assert b1 == 0.0
    assert trig.ratios(1.36)[1] == 0.0
    assert trig.finished(1.36)


def test_gaze_invariant_left_stick(engine):
    engine.background_on = False  # neutral baseline: gaze sum must be exactly 0
    for lx, ly, l2, r2 in ((0.5, 0.0, 0.0, 0.0), (-1.0, 0.0, 0.0, 0.0),
                           (0.3, 0.6, 0.0, 0.0), (1.0, 1.0, 0.7, 0.2)):
        engine.set_joystick(JoystickInput(lx=lx, ly=ly, l2=l2, r2=r2))
        out = engine.tick(10.0, 0.02)
        cmd = out.perpetual
        assert abs(cmd.theta_torso[0] + cmd.dtheta_head[0]) < 1e-9
        assert abs(cmd.theta_torso[1] + cmd.dtheta_head[1]) < 1e-9
        assert abs(cmd.theta_torso[2] + cmd.dtheta_head[2]) < 1e-9
    engine.set_joystick(JoystickInput())
    engine.background_on = True


def test_gaze_unchanged_by_left_stick_with_background(engine):
    engine.set_joystick(JoystickInput())
    base = engine.tick(10.0, 0.02).perpetual
    baseline = base.theta_torso[:2] + base.dtheta_head[:2]
    engine.set_joystick(JoystickInput(lx=0.8, ly=0.4))
    out = engine.tick(10.0, 0.02).perpetual
    assert np.allclose(out.theta_torso[:2] + out.dtheta_head[:2], baseline, atol=1e-9)
    engine.set_joystick(JoystickInput())


def test_left_stick_down_lowers_torso(engine, model):
    engine.set_joystick(JoystickInput(ly=-1.0))
    out = engine.tick(20.0, 0.02)
    assert out.perpetual.h_torso < model.torso_height_nominal - 0.03
    assert abs(out.perpetual.theta_torso[1]) < 0.05
    engine.set_joystick(JoystickInput())


def test_right_stick_knee_engages_torso(engine):
    mapping = engine.mapping
    engine.background_on = False
    engine.set_joystick(JoystickInput(rx=-0.5))
    below = engine.tick(30.0, 0.02).perpetual
    assert abs(below.theta_torso[0]) < 1e-9
    assert below.dtheta_head[0] > 0.1

    engine.set_joystick(JoystickInput(rx=-1.0))
    beyond = engine.tick(30.04, 0.02).perpetual
    assert beyond.theta_torso[0] > 0.1
    assert beyond.dtheta_head[0] == pytest.approx(mapping.head_yaw_range)
    engine.set_joystick(JoystickInput())
    engine.background_on = True


def test_walking_velocity_scaling(engine):
    engine.set_joystick(JoystickInput(ly=1.0))
    half = engine.tick(40.0, 0.02, mode="walking")
    assert half.periodic.velocity[0] == pytest.approx(0.35)
    engine.set_joystick(JoystickInput(ly=1.0, r1_held=True))
    full = engine.tick(40.04, 0.02, mode="walking")
    assert full.periodic.velocity[0] == pytest.approx(0.7)
    engine.set_joystick(JoystickInput())


def test_walking_show_modulation(engine):
    engine.set_joystick(JoystickInput(ly=1.0, r1_held=True))
    out = engine.tick(50.0, 0.02, mode="walking")
    idle = engine.library.background.sample_show(0.0)
    assert out.command.show.antennas.max() < idle[:2].max()
    assert out.command.show.eye_radii.max() < 0.8
    assert out.speed_fraction == pytest.approx(1.0)
    engine.set_joystick(JoystickInput())
    out = engine.tick(50.04, 0.02, mode="walking")
    assert np.allclose(out.periodic.velocity, 0.0)
    assert out.speed_fraction == 0.0


def test_zero_input_roundtrip(engine, model):
    engine.set_joystick(JoystickInput())
    out = engine.tick(60.0, 0.02)
    assert abs(out.perpetual.h_torso - model.torso_height_nominal) < 0.01
    assert np.abs(out.perpetual.theta_torso).max() < 0.01


def test_extract_ignores_leg_joints(engine):
    out = engine.tick(70.0, 0.02)
    y = out.command
    modified = AnimationCommand(y.show, y.config.copy())
    modified.config.q = modified.config.q.copy()
    modified.config.q[:10] += 0.37
    a = engine.extract_policy_command(y, "standing")
    b = engine.extract_policy_command(modified, "standing")
    assert abs(a.h_torso - b.h_torso) < 1e-12
    assert np.allclose(a.dtheta_head, b.dtheta_head, atol=1e-12)
    assert np.allclose(a.theta_torso, b.theta_torso, atol=1e-12)


def test_extract_reads_torso_pitch(engine, model):
    config = nominal_pose(model)
    from showbot.geometry import quat_from_euler_zyx
    config.orientation = quat_from_euler_zyx(0.0, 0.2, 0.0)
    cmd = engine.extract_policy_command(
        AnimationCommand(ShowFunctionState(), config), "standing")
    assert cmd.theta_torso[1] == pytest.approx(0.2, abs=1e-9)


def test_show_outputs_stay_in_range_under_blending(engine):
    rng = np.random.default_rng(0)
    t = 100.0
    for _ in range(200):
        if rng.random() < 0.08:
            name = rng.choice(["yes", "no", "happy", "angry", "scan"])
            engine.trigger(str(name), t)
        if rng.random() < 0.05:
            engine.cancel_triggers(t)
        out = engine.tick(t, 0.02)
        assert out.command.show.in_range()
        t += 0.02


def test_output_continuity_under_trigger_mashing(engine):
    rng = np.random.default_rng(42)
    t = 200.0
    dt = 0.02
    engine.tick(t, dt)
    prev = None
    max_jump_q = 0.0
    max_jump_show = 0.0
    for _ in range(600):
        t += dt
        if rng.random() < 0.1:
            name = rng.choice(["yes", "no", "happy", "angry", "anxious", "scan"])
            engine.trigger(str(name), t)
        if rng.random() < 0.06:
            engine.cancel_triggers(t)
        engine.set_joystick(JoystickInput(
            lx=float(np.sin(t)), ly=float(np.cos(1.3 * t)),
            rx=float(np.sin(0.7 * t)), ry=float(np.cos(0.9 * t))))
        out = engine.tick(t, dt)
        if prev is not None:
            max_jump_q = max(max_jump_q, np.abs(out.command.config.q - prev.config.q).max())
            max_jump_show = max(max_jump_show,
                                np.abs(out.command.show.to_vector()
                                       - prev.show.to_vector()).max())
        prev = out.command
    limits = engine.limiter.limits
    # Joint stream bounded by the blend limiter plus the joystick slew
    # (joystick axes are Lipschitz here with rate ~<= 1.3/s on command ranges).
    assert max_jump_q <= (limits.joints + 2.0) * dt
    assert max_jump_show <= limits.show * dt + 1e-9
    engine.set_joystick(JoystickInput())
