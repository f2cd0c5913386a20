import math

import numpy as np
import pytest

from flowperc.errors import ProtocolError
from flowperc.sim.bodies import Harmonic, ImmersedBody, Schedule, make_move


def test_move_travel_time_is_distance_over_speed():
    # 0.4 -> -0.7 at speed 0.3: 1.1 / 0.3 = 11/3, ramps do not stretch it
    seg = make_move(0.4, -0.7, 0.3, t0=0.0)
    assert seg.duration == pytest.approx(11.0 / 3.0, rel=1e-12)
    y_end, v_end, _ = seg.eval(seg.duration)
    assert y_end == pytest.approx(-0.7, abs=1e-12)
    assert v_end == 0.0


def test_move_distance_preserved_numerically():
    seg = make_move(-0.2, 0.9, 0.25, t0=5.0)
    ts = np.linspace(5.0, 5.0 + seg.duration, 20001)
    vs = np.array([seg.eval(t)[1] for t in ts])
    dist = np.trapezoid(vs, ts)
    assert dist == pytest.approx(1.1, abs=1e-6)
    # plateau runs at speed/0.9 to make up for the ramps
    assert vs.max() == pytest.approx(0.25 / 0.9, rel=1e-6)


def test_move_velocity_continuous_and_position_consistent():
    seg = make_move(0.0, 1.0, 0.3, t0=0.0)
    ts = np.linspace(0.0, seg.duration, 5000)
    ys = np.array([seg.eval(t)[0] for t in ts])
    vs = np.array([seg.eval(t)[1] for t in ts])
    v_fd = np.gradient(ys, ts)
    assert np.abs(v_fd[2:-2] - vs[2:-2]).max() < 1e-3


def test_zero_duration_noop():
    seg = make_move(0.5, 0.5, 0.3, t0=1.0)
    assert seg.duration == 0.0
    assert seg.eval(1.0) == (0.5, 0.0, 0.0)
    assert seg.eval(2.0) == (0.5, 0.0, 0.0)


def test_schedule_enforces_motion_range():
    sched = Schedule(y_start=0.0)
    with pytest.raises(ProtocolError):
        sched.move_to(1.2, 0.3, t0=0.0, limit=1.0)


def test_schedule_holds_between_moves():
    sched = Schedule(y_start=0.0)
    sched.move_to(0.5, 0.25, t0=1.0)
    end = sched.segments[-1].t1
    assert sched.eval(0.5) == (0.0, 0.0, 0.0)
    assert sched.eval(end + 3.0)[0] == pytest.approx(0.5)
    sched.move_to(-0.5, 0.25, t0=end + 5.0)
    y, v, _ = sched.eval(end + 4.0)
    assert y == pytest.approx(0.5) and v == 0.0


def test_marker_velocity_equals_center_velocity():
    # rigid translation: markers move with the center exactly
    body = ImmersedBody(5.0, 5.0, 0.5, h=1.0 / 24,
                        motion_y=make_move(0.0, -1.0, 0.3, t0=0.0))
    t, dt = 1.7, 1e-6
    x1, y1 = body.markers(t - dt)
    x2, y2 = body.markers(t + dt)
    _, _, vx, vy, _, _ = body.state(t)
    assert np.abs((x2 - x1) / (2 * dt) - vx).max() < 1e-5
    assert np.abs((y2 - y1) / (2 * dt) - vy).max() < 1e-5


def test_marker_count_and_spacing():
    h = 1.0 / 24
    body = ImmersedBody(5.0, 5.0, 0.5, h=h)
    assert body.n_markers >= 60
    assert body.n_markers == math.ceil(math.pi / h)
    # equally spaced on the circle
    mx, my = body.markers(0.0)
    gaps = np.hypot(np.diff(mx), np.diff(my))
    assert np.ptp(gaps) < 1e-12


def test_harmonic_motion_derivatives():
    m = Harmonic(mean=0.1, amp=0.14, freq=0.334, phase=-math.pi / 2)
    t = 0.77
    eps = 1e-6
    y0, v0, a0 = m.eval(t)
    yp = m.eval(t + eps)[0]
    ym = m.eval(t - eps)[0]
    assert (yp - ym) / (2 * eps) == pytest.approx(v0, abs=1e-6)
    assert (yp - 2 * y0 + ym) / eps ** 2 == pytest.approx(a0, abs=1e-3)
