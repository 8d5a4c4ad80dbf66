"""Path frame dynamics and phase signal propagation."""

import numpy as np
import pytest

from showbot.motion import PathFrame, PhaseSignal, advance
from showbot.motion.frame import project_to_torso, update_standing, update_walking


def test_standing_fixed_point():
    f = PathFrame(0.1, -0.2, 0.3)
    out = update_standing(f, (0.1, -0.2), 0.3, (0.1, -0.2), 0.3, dt=0.02)
    assert np.allclose([out.x, out.y, out.heading], [0.1, -0.2, 0.3])


def test_standing_exponential_decay():
    # Offset of 0.1 m decays by exp(-dt/T) with T = 1 s.
    f = PathFrame(0.1, 0.0, 0.0)
    out = update_standing(f, (0.0, 0.1), 0.0, (0.0, -0.1), 0.0, dt=0.02,
                          time_constant=1.0)
    assert np.isclose(out.x, 0.1 * np.exp(-0.02), atol=1e-12)
    assert out.y == 0.0


def test_standing_heading_wraps_shortest_arc():
    f = PathFrame(0.0, 0.0, 3.1)
    out = update_standing(f, (0.0, 0.1), -3.1, (0.0, -0.1), -3.1, dt=0.5)
    # Moves through pi, not through zero.
    assert out.heading > 3.1 or out.heading < -3.1 + 0.1
    err0 = abs(np.arctan2(np.sin(3.1 - -3.1), np.cos(3.1 - -3.1)))
    err1 = abs(np.arctan2(np.sin(out.heading - -3.1), np.cos(out.heading - -3.1)))
    assert err1 < err0


def test_standing_monotone_convergence():
    f = PathFrame(0.3, -0.2, 0.8)
    last = np.linalg.norm([0.3, -0.2])
    for _ in range(50):
        f = update_standing(f, (0.0, 0.06), 0.0, (0.0, -0.06), 0.0, dt=0.02)
        d = np.linalg.norm([f.x, f.y])
        assert d < last
        last = d


def test_walking_integration():
    f = update_walking(PathFrame(), (0.7, 0.0), 0.0, dt=0.02)
    assert np.isclose(f.x, 0.014) and f.y == 0.0 and f.heading == 0.0
    f = update_walking(PathFrame(), (0.0, 0.0), 1.8, dt=0.02)
    assert np.isclose(f.heading, 0.036) and f.x == 0.0 and f.y == 0.0
    f = update_walking(PathFrame(1.0, 2.0, 0.5), (0.0, 0.0), 0.0, dt=0.02)
    assert (f.x, f.y, f.heading) == (1.0, 2.0, 0.5)


def test_projection():
    f = PathFrame(0.1, 0.0, 0.1)
    out = project_to_torso(f, (0.0, 0.0), 0.0, max_distance=0.3, max_heading=0.5)
    assert (out.x, out.y, out.heading) == (f.x, f.y, f.heading)

    far = PathFrame(0.6, 0.0, 0.0)
    out = project_to_torso(far, (0.0, 0.0), 0.0, max_distance=0.3, max_heading=0.5)
    assert np.isclose(out.x, 0.3) and out.y == 0.0

    twice = project_to_torso(out, (0.0, 0.0), 0.0, max_distance=0.3, max_heading=0.5)
    assert np.allclose([twice.x, twice.y, twice.heading], [out.x, out.y, out.heading])

    twisted = PathFrame(0.0, 0.0, 1.2)
    out = project_to_torso(twisted, (0.0, 0.0), 0.0, max_distance=0.3, max_heading=0.5)
    assert np.isclose(out.heading, 0.5)


def test_phase_advance():
    p = advance(PhaseSignal(0.9, rate=10.0, mode="periodic"), dt=0.02)
    assert np.isclose(p.phi, 0.1) and not p.completed

    p = advance(PhaseSignal(0.95, rate=10.0, mode="episodic"), dt=0.02)
    assert p.phi == 1.0 and p.completed

    p = advance(PhaseSignal(0.4, rate=0.0, mode="periodic"), dt=0.02)
    assert p.phi == 0.4

    with pytest.raises(ValueError):
        advance(PhaseSignal(0.0, 1.0, "periodic"), dt=0.0)


def test_phase_mode_validation():
    with pytest.raises(ValueError):
        PhaseSignal(0.0, 1.0, "weird")
