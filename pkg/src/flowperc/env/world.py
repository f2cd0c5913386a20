"""Two-cylinder agent environment.

The obstacle cylinder sits upstream (motion configurable), the agent
cylinder 6 D downstream senses 200 surface pressures every 0.1 time units.
Two interchangeable backends: the immersed-boundary CFD solver and the
kinematic surrogate wake; every downstream consumer sees identical shapes.

Action contract: each action (a_pos in [-1, 1], a_vel in [0.2, 0.4]) moves
the agent to y* = -sign(y) * |a_pos| D at speed a_vel U (sign alternates via
a stored flag when y = 0), so every action crosses the centerline. The
reward is the negated mean drag coefficient over the action's sample ticks.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, ProtocolError
from ..sim.bodies import ImmersedBody, Schedule
from ..sim.solver import FlowSolver, SolverConfig
from .dataset import DatasetWriter, N_SENSORS
from .motion import make_motion
from .surrogate import SurrogateWake

SAMPLE_INTERVAL = 0.1
WINDOW_TICKS = 100


@dataclass(frozen=True)
class ActionCommand:
    a_pos: float
    a_vel: float

    def __post_init__(self):
        if not (-1.0 <= self.a_pos <= 1.0):
            raise ProtocolError(f"a_pos {self.a_pos} outside [-1, 1]")
        if not (0.2 <= self.a_vel <= 0.4):
            raise ProtocolError(f"a_vel {self.a_vel} outside [0.2, 0.4]")


@dataclass
class Geometry:
    lx: float
    ly: float
    x_obstacle: float
    x_agent: float
    resolution: int

    def check(self):
        # both bodies fully inside with >= 4 D lateral clearance
        if self.ly / 2.0 - 0.5 < 4.0:
            raise ConfigError("geometry: less than 4 D lateral clearance")
        if self.x_agent - self.x_obstacle != 6.0:
            raise ConfigError("geometry: agent must sit 6 D downstream")


GEOMETRY_PRESETS = {
    "desk": Geometry(lx=24.0, ly=12.0, x_obstacle=8.0, x_agent=14.0,
                     resolution=24),
    "paper": Geometry(lx=60.0, ly=40.0, x_obstacle=20.0, x_agent=26.0,
                      resolution=32),
}

BACKENDS = ("cfd", "surrogate")


@dataclass
class EnvConfig:
    backend: str = "surrogate"
    geometry: str = "desk"
    re: float = 100.0
    motion_kind: str = "still"
    motion_params: dict = field(default_factory=dict)
    seed: int = 0
    agent_y0: float = 0.0        # initial lateral offset from centerline
    warmup: float | None = None  # time units before reset() hands control over
    kick: float = 0.4            # symmetry-breaking kick (cfd backend)

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ConfigError(f"unknown backend {self.backend!r}")
        if self.geometry not in GEOMETRY_PRESETS:
            raise ConfigError(f"unknown geometry preset {self.geometry!r}")

    @property
    def warmup_time(self):
        if self.warmup is not None:
            return self.warmup
        return 30.0 if self.backend == "cfd" else 15.0


class _CfdBackend:
    def __init__(self, cfg: EnvConfig, geo: Geometry, motion, agent_sched):
        res = geo.resolution
        h = 1.0 / res
        self.geo = geo
        self.solver_cfg = SolverConfig(nx=round(geo.lx * res),
                                       ny=round(geo.ly * res), h=h, re=cfg.re)
        cy = geo.ly / 2.0
        self.obstacle = ImmersedBody(geo.x_obstacle, cy, 0.5, h,
                                     motion_y=motion, name="obstacle")
        self.agent = ImmersedBody(geo.x_agent, cy, 0.5, h,
                                  motion_y=agent_sched, name="agent")
        self.solver = FlowSolver(self.solver_cfg, [self.obstacle, self.agent])
        self._kick = cfg.kick
        self._kicked = False

    @property
    def t(self):
        return self.solver.t

    def advance_to(self, t_new):
        self.solver.advance_to(t_new)
        if not self._kicked and self.solver.t >= 2.0 and self._kick:
            self.solver.add_velocity_kick(
                self._kick, self.geo.x_obstacle + 1.5,
                self.geo.ly / 2.0 + 0.75)
            self._kicked = True

    def sample(self):
        p = self.solver.sample_surface_pressure(self.agent)
        f = self.solver.compute_forces(self.agent)
        return p, f.cd, f.cl


class _SurrogateBackend:
    def __init__(self, cfg: EnvConfig, geo: Geometry, motion, agent_sched):
        self.motion = motion
        self.sched = agent_sched
        self.wake = SurrogateWake(x_obstacle=geo.x_obstacle,
                                  x_agent=geo.x_agent,
                                  sensor_radius=0.5 + 1.0 / geo.resolution)
        self.t = 0.0

    def advance_to(self, t_new):
        self.wake.advance_to(t_new, self.motion.eval)
        self.t = t_new

    def sample(self):
        y, vy, ay = self.sched.eval(self.t)
        p = self.wake.surface_pressure(y, vy, ay)
        cd, cl = self.wake.forces(y, vy)
        return p, cd, cl


class TwoCylinderEnv:
    def __init__(self, config: EnvConfig):
        self.config = config
        geo = GEOMETRY_PRESETS[config.geometry]
        geo.check()
        self.geometry = geo
        self.motion = make_motion(config.motion_kind, config.motion_params,
                                  seed=config.seed)
        self.agent_schedule = Schedule(y_start=config.agent_y0)
        if config.backend == "cfd":
            self._backend = _CfdBackend(config, geo, self.motion,
                                        self.agent_schedule)
        else:
            self._backend = _SurrogateBackend(config, geo, self.motion,
                                              self.agent_schedule)
        self.t = 0.0
        self._zero_sign = -1.0
        self._ready = False
        # full tick history since construction (pressure rows are float32)
        self.stream_p: list[np.ndarray] = []
        self.stream_cd: list[float] = []
        self.stream_cl: list[float] = []
        self.stream_t: list[float] = []
        self.stream_y_obs: list[float] = []
        self.stream_y_agent: list[float] = []

    # -- core ticking --------------------------------------------------------

    def tick(self):
        self.t = round(self.t + SAMPLE_INTERVAL, 9)
        self._backend.advance_to(self.t)
        p, cd, cl = self._backend.sample()
        self.stream_p.append(np.asarray(p, dtype=np.float32))
        self.stream_cd.append(float(cd))
        self.stream_cl.append(float(cl))
        self.stream_t.append(self.t)
        self.stream_y_obs.append(float(self.motion.eval(self.t)[0]))
        self.stream_y_agent.append(float(self.agent_schedule.eval(self.t)[0]))
        return len(self.stream_p) - 1

    def window(self, end_index: int | None = None) -> np.ndarray:
        """Trailing (100, 200) pressure window ending at end_index."""
        if end_index is None:
            end_index = len(self.stream_p) - 1
        if end_index + 1 < WINDOW_TICKS:
            raise ProtocolError("not enough history for a full window")
        rows = self.stream_p[end_index - WINDOW_TICKS + 1:end_index + 1]
        return np.stack(rows)

    @property
    def y_agent(self):
        return self.agent_schedule.eval(self.t)[0]

    @property
    def y_obstacle(self):
        return self.motion.eval(self.t)[0]

    # -- RL interface ----------------------------------------------------------

    def reset(self) -> np.ndarray:
        """Warm up (first call only; the flow carries over afterwards)."""
        need = max(WINDOW_TICKS,
                   int(round(self.config.warmup_time / SAMPLE_INTERVAL)))
        while len(self.stream_p) < need:
            self.tick()
        self._ready = True
        return self.window()

    def step(self, action: ActionCommand):
        if not self._ready:
            raise ProtocolError("env.step() before reset()")
        y_now = self.agent_schedule.end_value
        if y_now == 0.0:
            sign = self._zero_sign
            self._zero_sign = -self._zero_sign
        else:
            sign = math.copysign(1.0, y_now)
        y_target = -sign * abs(action.a_pos)
        seg = self.agent_schedule.move_to(y_target, action.a_vel, t0=self.t,
                                          limit=1.0)
        n_ticks = max(1, math.ceil(seg.duration / SAMPLE_INTERVAL - 1e-9))
        start = len(self.stream_cd)
        for _ in range(n_ticks):
            end_index = self.tick()
        cd_samples = np.array(self.stream_cd[start:])
        reward = -float(cd_samples.mean())
        info = {
            "duration": seg.duration,
            "n_ticks": n_ticks,
            "mean_cd": float(cd_samples.mean()),
            "cd_samples": cd_samples,
            "y_from": y_now,
            "y_target": y_target,
            "end_index": end_index,
            "t": self.t,
        }
        return self.window(), reward, info


def record_dataset(env: TwoCylinderEnv, duration: float, path,
                   warmup: float | None = None) -> int:
    """Run the environment (agent holding) and write one record per tick.

    Returns the number of records written: floor(duration / 0.1).
    """
    if duration <= 0:
        raise ConfigError("duration must be positive")
    warm = env.config.warmup_time if warmup is None else warmup
    n_warm = int(round(warm / SAMPLE_INTERVAL))
    n_rec = int(math.floor(duration / SAMPLE_INTERVAL + 1e-9))
    for _ in range(n_warm):
        env.tick()
    with DatasetWriter(path) as w:
        for _ in range(n_rec):
            k = env.tick()
            w.append(env.stream_t[k], env.stream_y_obs[k],
                     env.stream_y_agent[k], env.stream_p[k],
                     env.stream_cd[k], env.stream_cl[k])
    return n_rec
