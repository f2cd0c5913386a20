"""Obstacle motion generators.

All kinds return an object with eval(t) -> (y_offset, velocity,
acceleration), bounded to |y| <= 1 D and deterministic for a given seed:

    random-waypoint  uniform targets in [-1, 1] D, uniform nominal speeds in
                     [0.2, 0.4] U, cosine-ramp moves back to back
    intermittent     oscillation between +/- amplitude with a 5-time-unit
                     pause at each extremum
    one-sided-sine   sinusoid confined to one side of the centerline
    still            fixed at the centerline
"""

import math

from ..errors import ConfigError
from ..nn.rng import Rng
from ..sim.bodies import Harmonic, Hold, Schedule, make_move

MOTION_KINDS = ("random-waypoint", "intermittent", "one-sided-sine", "still")


class _LazySchedule:
    """Waypoint schedule generated on demand, deterministically from a seed."""

    def __init__(self, extend_fn, y_start=0.0):
        self.sched = Schedule(y_start=y_start)
        self._extend = extend_fn

    def eval(self, t):
        while self.sched.end_time < t + 1e-9:
            self._extend(self.sched)
        return self.sched.eval(t)


def make_motion(kind: str, params: dict | None = None, seed: int = 0):
    """Build a trajectory for the given kind; see module docstring."""
    params = dict(params or {})
    amp = float(params.pop("amplitude", 1.0))
    if amp > 1.0 + 1e-12:
        raise ConfigError(f"motion amplitude {amp} exceeds 1 D")

    if kind == "still":
        params.pop("pause", None)
        params.pop("frequency", None)
        _reject_extras(kind, params)
        return Hold(0.0)

    if kind == "random-waypoint":
        _reject_extras(kind, params)
        rng = Rng(seed)

        def extend(sched: Schedule):
            target = float(rng.uniform(-amp, amp))
            speed = float(rng.uniform(0.2, 0.4))
            sched.move_to(target, speed, t0=sched.end_time, limit=1.0)

        return _LazySchedule(extend)

    if kind == "intermittent":
        pause = float(params.pop("pause", 5.0))
        speed = float(params.pop("speed", 0.3))
        _reject_extras(kind, params)

        def extend(sched: Schedule):
            # pause at the current extremum, then swing to the other side
            target = -amp if sched.end_value > 0 else amp
            sched.move_to(target, speed, t0=sched.end_time + pause, limit=1.0)

        return _LazySchedule(extend, y_start=amp)

    if kind == "one-sided-sine":
        freq = float(params.pop("frequency", 0.1))
        _reject_extras(kind, params)
        if math.pi * freq * amp > 0.4 + 1e-9:
            raise ConfigError(
                f"one-sided-sine at amplitude {amp}, frequency {freq} "
                f"exceeds the 0.4 U velocity bound"
            )
        # y = amp/2 * (1 - cos(2 pi f t)): stays in [0, amp]
        return Harmonic(mean=amp / 2.0, amp=-amp / 2.0, freq=freq)

    raise ConfigError(f"unknown motion kind {kind!r}; choose from "
                      f"{MOTION_KINDS}")


def _reject_extras(kind, params):
    if params:
        raise ConfigError(f"unknown parameters for {kind!r}: "
                          f"{sorted(params)}")
