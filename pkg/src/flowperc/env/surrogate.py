"""Kinematic wake surrogate: a deliberately simple stand-in for the CFD
backend that preserves the sensing geometry and reward structure.

Vortex street: Lamb-Oseen vortices of alternating sign leave the obstacle
at (x_obs, y_obs(t_release) +/- 0.25 D), one release every 1/(2 f) with
f = 0.167 (a full shedding cycle per 1/f), advecting downstream at 0.85 U.
Positions are exact functions of time, so the generated signals are
strictly periodic once the street is populated (for a still obstacle).

Agent surface pressure: quasi-steady Bernoulli on the superposition of the
relative free stream, a doublet enforcing the cylinder surface, and the
vortex velocities, plus a lateral added-mass term proportional to the
agent's acceleration.

Forces are a smooth caricature (never used for solver validation): drag
grows when the agent sits in a vortex lane or a vortex passes close by,
so avoiding the street lowers drag; lift follows nearby circulation.
"""

import math
from dataclasses import dataclass, field

import numpy as np

SHED_FREQ = 0.167
ADVECT_SPEED = 0.85
LANE_OFFSET = 0.25
VORTEX_STRENGTH = 1.5
VORTEX_CORE = 0.25

CD_BASE = 0.30
CD_LANE = 0.35
CD_LANE_WIDTH = 0.35
CD_PROX = 0.40
CD_PROX_WIDTH = 0.50
CD_VEL = 0.10
CL_GAIN = -0.60


@dataclass
class Vortex:
    t_release: float
    y: float
    gamma: float


@dataclass
class SurrogateWake:
    x_obstacle: float
    x_agent: float
    radius: float = 0.5
    sensor_radius: float = 0.5 + 1.0 / 24.0
    u_inf: float = 1.0
    t: float = 0.0
    vortices: list = field(default_factory=list)
    _n_released: int = 0

    @property
    def release_period(self):
        return 1.0 / (2.0 * SHED_FREQ)

    def advance_to(self, t_new: float, y_obstacle_fn):
        """Release all vortices due by t_new; drop those far downstream."""
        period = self.release_period
        while (self._n_released + 1) * period <= t_new + 1e-12:
            self._n_released += 1
            t_rel = self._n_released * period
            sign = 1.0 if self._n_released % 2 == 0 else -1.0
            y_rel = y_obstacle_fn(t_rel)[0] + sign * LANE_OFFSET
            # upper-lane vortices spin clockwise (negative circulation)
            self.vortices.append(Vortex(t_rel, y_rel,
                                        -sign * VORTEX_STRENGTH))
        self.t = t_new
        cutoff = self.x_agent + 8.0
        self.vortices = [v for v in self.vortices
                         if self._vortex_x(v) <= cutoff]

    def _vortex_x(self, v: Vortex) -> float:
        return self.x_obstacle + ADVECT_SPEED * (self.t - v.t_release)

    def positions(self):
        vx = np.array([self._vortex_x(v) for v in self.vortices])
        vy = np.array([v.y for v in self.vortices])
        g = np.array([v.gamma for v in self.vortices])
        return vx, vy, g

    def velocity(self, px, py, y_agent, vy_agent):
        """Flow velocity (agent frame) at points (px, py)."""
        u = np.full_like(px, self.u_inf)
        v = np.full_like(px, -vy_agent)
        if self.vortices:
            vx, vy, g = self.positions()
            dx = px[:, None] - vx[None, :]
            dy = py[:, None] - vy[None, :]
            r2 = dx * dx + dy * dy
            factor = (g[None, :] / (2.0 * math.pi * np.maximum(r2, 1e-12))
                      * (1.0 - np.exp(-r2 / VORTEX_CORE ** 2)))
            u += (-dy * factor).sum(axis=1)
            v += (dx * factor).sum(axis=1)
        # doublet aligned with the mean relative stream keeps the circle a
        # streamline of the smooth part of the flow
        zx = px - self.x_agent
        zy = py - y_agent
        r2 = zx * zx + zy * zy
        R2 = self.radius ** 2
        w_u, w_v = self.u_inf, -vy_agent
        z2r = (zx * zx - zy * zy) / (r2 * r2)
        z2i = (2.0 * zx * zy) / (r2 * r2)
        u += -R2 * (w_u * z2r + w_v * z2i)
        v += R2 * (w_v * z2r - w_u * z2i)
        return u, v

    def surface_pressure(self, y_agent, vy_agent, ay_agent,
                         n_sensors: int = 200) -> np.ndarray:
        th = 2.0 * math.pi * np.arange(n_sensors) / n_sensors
        px = self.x_agent - self.sensor_radius * np.cos(th)
        py = y_agent + self.sensor_radius * np.sin(th)
        u, v = self.velocity(px, py, y_agent, vy_agent)
        cp = 1.0 - (u * u + v * v) / self.u_inf ** 2
        cp += 2.0 * self.radius * ay_agent * np.sin(th) / self.u_inf ** 2
        return cp

    def forces(self, y_agent, vy_agent):
        cd = CD_BASE
        cd += CD_LANE * (
            math.exp(-((y_agent - LANE_OFFSET) / CD_LANE_WIDTH) ** 2)
            + math.exp(-((y_agent + LANE_OFFSET) / CD_LANE_WIDTH) ** 2))
        cl = 0.0
        if self.vortices:
            vx, vy, g = self.positions()
            d2 = (vx - self.x_agent) ** 2 + (vy - y_agent) ** 2
            w = np.exp(-d2 / CD_PROX_WIDTH ** 2)
            cd += CD_PROX * float(w.sum())
            cl += CL_GAIN * float((g * w).sum())
        cd += CD_VEL * vy_agent * vy_agent
        return cd, cl
