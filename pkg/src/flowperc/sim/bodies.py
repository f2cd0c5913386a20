"""Rigid circular bodies and their prescribed kinematics.

All motions are 1D profiles (per axis) evaluated analytically: position,
velocity and acceleration as closed forms of t. Point-to-point moves use a
constant-speed profile with cosine ramps over the first and last 10% of the
travel time; the ramps are shaped so total time stays distance/speed (the
plateau runs at speed/0.9).
"""

import bisect
import math
from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError, ProtocolError


@dataclass
class MoveSegment:
    t0: float
    duration: float
    y0: float
    y1: float
    ramp: float  # ramp fraction of duration, per end

    @property
    def t1(self):
        return self.t0 + self.duration

    @property
    def peak_speed(self):
        if self.duration == 0.0:
            return 0.0
        return (self.y1 - self.y0) / ((1.0 - self.ramp) * self.duration)

    def eval(self, t):
        """Position, velocity, acceleration at absolute time t (clamped)."""
        tau = t - self.t0
        if tau <= 0.0 or self.duration == 0.0:
            return self.y0, 0.0, 0.0
        if tau >= self.duration:
            return self.y1, 0.0, 0.0
        sp = self.peak_speed
        tr = self.ramp * self.duration
        if tau < tr:
            w = math.pi / tr
            y = self.y0 + 0.5 * sp * (tau - math.sin(w * tau) / w)
            v = 0.5 * sp * (1.0 - math.cos(w * tau))
            a = 0.5 * sp * w * math.sin(w * tau)
            return y, v, a
        if tau <= self.duration - tr:
            y = self.y0 + 0.5 * sp * tr + sp * (tau - tr)
            return y, sp, 0.0
        tp = tau - (self.duration - tr)
        w = math.pi / tr
        y = self.y1 - 0.5 * sp * tr + 0.5 * sp * (tp + math.sin(w * tp) / w)
        v = 0.5 * sp * (1.0 + math.cos(w * tp))
        a = -0.5 * sp * w * math.sin(w * tp)
        return y, v, a


def make_move(y0: float, y1: float, speed: float, t0: float,
              ramp: float = 0.1) -> MoveSegment:
    """Point-to-point move at nominal `speed`; duration = |y1-y0|/speed."""
    if speed <= 0.0:
        raise ProtocolError(f"move speed must be positive, got {speed}")
    dist = abs(y1 - y0)
    return MoveSegment(t0=t0, duration=dist / speed, y0=y0, y1=y1, ramp=ramp)


class Hold:
    """Constant offset."""

    def __init__(self, value: float = 0.0):
        self.value = value

    def eval(self, t):
        return self.value, 0.0, 0.0


class Harmonic:
    """offset(t) = mean + amp * cos(2*pi*freq*t + phase)."""

    def __init__(self, mean: float, amp: float, freq: float, phase: float = 0.0):
        self.mean = mean
        self.amp = amp
        self.freq = freq
        self.phase = phase

    def eval(self, t):
        w = 2.0 * math.pi * self.freq
        c = math.cos(w * t + self.phase)
        s = math.sin(w * t + self.phase)
        return self.mean + self.amp * c, -self.amp * w * s, -self.amp * w * w * c


class Schedule:
    """A time-ordered sequence of MoveSegments with holds in between."""

    def __init__(self, y_start: float = 0.0):
        self.segments: list[MoveSegment] = []
        self._starts: list[float] = []
        self.y_start = y_start

    @property
    def end_time(self):
        return self.segments[-1].t1 if self.segments else 0.0

    @property
    def end_value(self):
        return self.segments[-1].y1 if self.segments else self.y_start

    def append(self, seg: MoveSegment):
        if self.segments and seg.t0 < self.segments[-1].t1 - 1e-12:
            raise ProtocolError("schedule segments must not overlap")
        self.segments.append(seg)
        self._starts.append(seg.t0)

    def move_to(self, target: float, speed: float, t0: float,
                ramp: float = 0.1, limit: float = 1.0) -> MoveSegment:
        if abs(target) > limit + 1e-12:
            raise ProtocolError(
                f"target {target} outside +/-{limit} motion range"
            )
        seg = make_move(self.end_value, target, speed, t0, ramp)
        self.append(seg)
        return seg

    def eval(self, t):
        if not self.segments or t <= self.segments[0].t0:
            return (self.segments[0].y0 if self.segments else self.y_start,
                    0.0, 0.0)
        k = bisect.bisect_right(self._starts, t) - 1
        return self.segments[k].eval(t)


class ImmersedBody:
    """Circle of given radius with prescribed per-axis motion profiles."""

    def __init__(self, x: float, y: float, radius: float, h: float,
                 motion_x=None, motion_y=None, name: str = "body",
                 min_markers: int = 60, marker_retract: float = 0.0):
        self.x0 = x
        self.y0 = y
        self.radius = radius
        self.name = name
        self.motion_x = motion_x if motion_x is not None else Hold()
        self.motion_y = motion_y if motion_y is not None else Hold()
        self.n_markers = max(int(math.ceil(2.0 * math.pi * radius / h)),
                             min_markers)
        # markers sit slightly inside the surface to offset the apparent
        # radius growth from the smeared delta (classic IBM correction)
        rm = radius - marker_retract * h
        ang = 2.0 * math.pi * np.arange(self.n_markers) / self.n_markers
        self._mcos = np.cos(ang) * rm
        self._msin = np.sin(ang) * rm
        self.marker_spacing = 2.0 * math.pi * rm / self.n_markers
        # filled by the solver each step
        self.last_force = None
        self.last_slip = None

    def state(self, t):
        """(cx, cy, vx, vy, ax, ay) at time t."""
        dx, vx, ax = self.motion_x.eval(t)
        dy, vy, ay = self.motion_y.eval(t)
        return self.x0 + dx, self.y0 + dy, vx, vy, ax, ay

    def markers(self, t):
        cx, cy, _, _, _, _ = self.state(t)
        return self._mcos + cx, self._msin + cy

    def check_inside(self, lx: float, ly: float, margin: float):
        for t in (0.0,):
            cx, cy, *_ = self.state(t)
            if (cx - self.radius < margin or cx + self.radius > lx - margin
                    or cy - self.radius < margin
                    or cy + self.radius > ly - margin):
                raise GeometryError(
                    f"body {self.name!r} at ({cx:.2f},{cy:.2f}) too close to "
                    f"the domain boundary (margin {margin:.3f})"
                )
