"""Fractional-step incompressible Navier-Stokes on a staggered Cartesian grid.

Second-order central advection and explicit diffusion advanced with
variable-step Adams-Bashforth 2, direct-forcing immersed boundaries
(3-point regularized delta, iterated), and a multigrid pressure projection.
Two boundary modes:

    channel  -- uniform inflow, convective outflow with a global mass fix,
                free-slip lateral walls
    periodic -- fully periodic box (Taylor-Green style tests)

Nondimensional units throughout: rho = 1, U_inf = 1, D = 1, nu = 1/Re.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import BlowUpError, GeometryError, ProtocolError
from . import kernels as K
from .bodies import ImmersedBody
from .poisson import MultigridPoisson


@dataclass
class FluidParams:
    re: float
    u_inf: float = 1.0
    rho: float = 1.0
    diameter: float = 1.0

    @property
    def nu(self):
        return self.u_inf * self.diameter / self.re


@dataclass
class SolverConfig:
    nx: int
    ny: int
    h: float
    re: float
    u_inf: float = 1.0
    periodic: bool = False
    cfl: float = 0.45
    diff_safety: float = 0.9
    dt_max: float = 0.05
    poisson_tol: float = 1e-7
    force_iters: int = 3
    blowup_limit: float = 50.0

    @property
    def nu(self):
        return self.u_inf / self.re

    @property
    def lx(self):
        return self.nx * self.h

    @property
    def ly(self):
        return self.ny * self.h


@dataclass
class ForceSample:
    t: float
    cd: float
    cl: float
    fx: float = 0.0
    fy: float = 0.0


class FlowSolver:
    def __init__(self, config: SolverConfig, bodies: list[ImmersedBody] = ()):
        c = self.config = config
        nx, ny = c.nx, c.ny
        self.U = np.zeros((nx + 3, ny + 2))
        self.V = np.zeros((nx + 2, ny + 3))
        self.P = np.zeros((nx + 2, ny + 2))
        self.RU = np.zeros_like(self.U)
        self.RV = np.zeros_like(self.V)
        self.RU_prev = np.zeros_like(self.U)
        self.RV_prev = np.zeros_like(self.V)
        self.D = np.zeros((nx + 2, ny + 2))
        self.mg = MultigridPoisson(nx, ny, c.h, periodic=c.periodic)
        self.PHI = self.mg.phi0
        self.bodies = list(bodies)
        self.t = 0.0
        self.step_count = 0
        self.last_dt = None
        self.last_courant = 0.0
        self.last_div = 0.0
        self._vmax = None
        self._p_step = None
        margin = 3.5 * c.h
        for b in self.bodies:
            b.check_inside(c.lx, c.ly, margin)
        if not c.periodic:
            self.U[1:nx + 2, 1:ny + 1] = c.u_inf

    # -- initial conditions ------------------------------------------------

    def set_velocity(self, ufunc, vfunc):
        """Set u, v from callables of (x, y) arrays (periodic box setup)."""
        c = self.config
        nx, ny = c.nx, c.ny
        xu, yu = np.meshgrid(np.arange(nx + 1) * c.h,
                             (np.arange(ny) + 0.5) * c.h, indexing="ij")
        self.U[1:nx + 2, 1:ny + 1] = ufunc(xu, yu)
        self._vmax = None
        xv, yv = np.meshgrid((np.arange(nx) + 0.5) * c.h,
                             np.arange(ny + 1) * c.h, indexing="ij")
        self.V[1:nx + 1, 1:ny + 2] = vfunc(xv, yv)

    def add_velocity_kick(self, amp: float, x0: float, y0: float,
                          sigma: float = 0.5):
        """One-shot Gaussian v-perturbation (breaks wake symmetry quickly)."""
        c = self.config
        nx, ny = c.nx, c.ny
        xv, yv = np.meshgrid((np.arange(nx) + 0.5) * c.h,
                             np.arange(ny + 1) * c.h, indexing="ij")
        blob = amp * np.exp(-((xv - x0) ** 2 + (yv - y0) ** 2) / sigma ** 2)
        if not c.periodic:
            blob[:, 0] = 0.0
            blob[:, -1] = 0.0
        self.V[1:nx + 1, 1:ny + 2] += blob
        self._vmax = None

    # -- boundary handling -------------------------------------------------

    def _fill_ghosts(self):
        c = self.config
        nx, ny = c.nx, c.ny
        U, V = self.U, self.V
        if c.periodic:
            # u faces 0..nx-1 live; face nx is a copy of face 0
            U[nx + 1, :] = U[1, :]
            U[0, :] = U[nx, :]
            U[nx + 2, :] = U[2, :]
            U[:, 0] = U[:, ny]
            U[:, ny + 1] = U[:, 1]
            V[:, ny + 1] = V[:, 1]
            V[:, 0] = V[:, ny]
            V[:, ny + 2] = V[:, 2]
            V[0, :] = V[nx, :]
            V[nx + 1, :] = V[1, :]
            return
        # channel mode
        U[1, 1:ny + 1] = c.u_inf                   # inlet Dirichlet
        U[:, 0] = U[:, 1]                          # free-slip walls: du/dy=0
        U[:, ny + 1] = U[:, ny]
        U[0, :] = 2.0 * U[1, :] - U[2, :]
        U[nx + 2, :] = U[nx + 1, :]
        V[:, 1] = 0.0                              # wall v faces
        V[:, ny + 1] = 0.0
        V[:, 0] = -V[:, 2]
        V[:, ny + 2] = -V[:, ny]
        V[0, :] = -V[1, :]                         # inlet plane v = 0
        V[nx + 1, :] = V[nx, :]                    # outlet dv/dx = 0

    def _outlet_and_massfix(self, dt):
        c = self.config
        nx, ny = c.nx, c.ny
        U = self.U
        # convective outflow on the last u-face, then exact global mass fix
        co = dt * c.u_inf / c.h
        U[nx + 1, 1:ny + 1] -= co * (U[nx + 1, 1:ny + 1] - U[nx, 1:ny + 1])
        flux_in = U[1, 1:ny + 1].sum()
        flux_out = U[nx + 1, 1:ny + 1].sum()
        U[nx + 1, 1:ny + 1] += (flux_in - flux_out) / ny

    # -- time stepping -----------------------------------------------------

    def max_speed(self):
        if self._vmax is None:
            self._vmax = max(K.maxabs2(self.U, self.V), self.config.u_inf)
        return self._vmax

    def suggest_dt(self):
        c = self.config
        dt_adv = c.cfl * c.h / self.max_speed()
        dt_dif = c.diff_safety * c.h * c.h / (8.0 * c.nu)
        return min(dt_adv, dt_dif, c.dt_max)

    def step(self, dt: float):
        c = self.config
        nx, ny = c.nx, c.ny
        t_new = self.t + dt
        self._fill_ghosts()
        if c.periodic:
            iu = (1, nx + 1, 1, ny + 1)
            iv = (1, nx + 1, 1, ny + 1)
        else:
            iu = (2, nx + 1, 1, ny + 1)
            iv = (1, nx + 1, 2, ny + 1)
        K.mom_rhs_u(self.U, self.V, self.RU, c.h, c.nu, *iu)
        K.mom_rhs_v(self.U, self.V, self.RV, c.h, c.nu, *iv)
        if self.last_dt is None:
            b1, b2 = 1.0, 0.0
            extrap = None
        else:
            r = dt / self.last_dt
            b1, b2 = 1.0 + 0.5 * r, -0.5 * r
            extrap = r
        K.ab2_update(self.U, self.RU, self.RU_prev, dt, b1, b2, *iu)
        K.ab2_update(self.V, self.RV, self.RV_prev, dt, b1, b2, *iv)
        self.RU_prev, self.RU = self.RU, self.RU_prev
        self.RV_prev, self.RV = self.RV, self.RV_prev

        if not c.periodic:
            self._outlet_and_massfix(dt)
            self._force_bodies(dt, t_new)

        K.divergence(self.U, self.V, self.mg.rhs0, c.h, nx, ny)
        phi, res, _ = self.mg.solve(tol=c.poisson_tol, extrapolate=extrap)
        self.PHI = phi
        K.correct_u(self.U, self.PHI, c.h, *iu)
        K.correct_v(self.V, self.PHI, c.h, *iv)
        if c.periodic:
            self.U[nx + 1, :] = self.U[1, :]
            self.V[:, ny + 1] = self.V[:, 1]
        self._p_step = None  # pressure derived lazily from PHI / dt

        self._vmax = None
        vmax = self.max_speed()
        self.last_courant = vmax * dt / c.h
        self.last_div = res
        if not np.isfinite(vmax) or vmax > c.blowup_limit:
            raise BlowUpError(t_new, self.last_courant)
        self.t = t_new
        self.last_dt = dt
        self.step_count += 1

    def advance_to(self, t_end: float):
        # equal substeps per call: a clipped final micro-step would poison
        # the direct-forcing force estimate (which scales with 1/dt)
        while self.t < t_end - 1e-12:
            remaining = t_end - self.t
            n = max(1, math.ceil(remaining / self.suggest_dt() - 1e-9))
            self.step(remaining / n)

    # -- immersed boundaries -----------------------------------------------

    def _force_bodies(self, dt, t_new):
        c = self.config
        for b in self.bodies:
            mx, my = b.markers(t_new)
            if (mx.min() < 4 * c.h or mx.max() > c.lx - 4 * c.h
                    or my.min() < 4 * c.h or my.max() > c.ly - 4 * c.h):
                raise GeometryError(
                    f"body {b.name!r} markers too close to the boundary "
                    f"at t={t_new:.3f}"
                )
            _, _, vx, vy, ax, ay = b.state(t_new)
            scale = b.marker_spacing / c.h
            fx_sum = 0.0
            fy_sum = 0.0
            for _ in range(c.force_iters):
                um, vm = K.ib_interp(self.U, self.V, mx, my, c.h)
                du = vx - um
                dv = vy - vm
                fx_sum += float(du.sum())
                fy_sum += float(dv.sum())
                K.ib_spread(self.U, self.V, mx, my, du, dv, c.h, scale)
            um, vm = K.ib_interp(self.U, self.V, mx, my, c.h)
            b.last_slip = float(max(np.max(np.abs(vx - um)),
                                    np.max(np.abs(vy - vm))))
            # force on the body: minus the fluid forcing, plus the inertia
            # of the fluid displaced by the prescribed rigid motion
            vol = b.marker_spacing * c.h
            area = math.pi * b.radius ** 2
            fx = -fx_sum * vol / dt + area * ax
            fy = -fy_sum * vol / dt + area * ay
            q = 0.5 * c.u_inf ** 2 * (2.0 * b.radius)
            cd = fx / q if q > 0.0 else 0.0
            cl = fy / q if q > 0.0 else 0.0
            b.last_force = ForceSample(t=t_new, cd=cd, cl=cl, fx=fx, fy=fy)

    def compute_forces(self, body: ImmersedBody) -> ForceSample:
        if body.last_force is None:
            raise ProtocolError("compute_forces called before any step")
        return body.last_force

    # -- sampling and export -------------------------------------------------

    @property
    def pressure(self):
        """Padded pressure field phi/dt, refreshed lazily per step."""
        if self._p_step != self.step_count and self.last_dt is not None:
            np.divide(self.PHI, self.last_dt, out=self.P)
            self._p_step = self.step_count
        return self.P

    def inlet_pressure_ref(self) -> float:
        return float(self.pressure[1, 1:self.config.ny + 1].mean())

    def sample_surface_pressure(self, body: ImmersedBody,
                                n_sensors: int = 200) -> np.ndarray:
        """Pressure coefficients on a sensor ring of radius R + h.

        Sensor j sits at angle theta_j = 2*pi*j/n measured from the
        upstream-facing point, going over the upper surface first.
        """
        c = self.config
        cx, cy, *_ = body.state(self.t)
        rs = body.radius + c.h
        th = 2.0 * math.pi * np.arange(n_sensors) / n_sensors
        xs = cx - rs * np.cos(th)
        ys = cy + rs * np.sin(th)
        if (xs.min() < c.h or xs.max() > c.lx - c.h
                or ys.min() < c.h or ys.max() > c.ly - c.h):
            raise GeometryError("pressure sensor ring leaves the domain")
        p = K.sample_cc(self.pressure, xs, ys, c.h)
        pref = self.inlet_pressure_ref()
        return (p - pref) / (0.5 * c.u_inf ** 2)

    def max_divergence(self) -> float:
        c = self.config
        K.divergence(self.U, self.V, self.D, c.h, c.nx, c.ny)
        return float(np.max(np.abs(self.D[1:c.nx + 1, 1:c.ny + 1])))

    def cell_center_fields(self):
        """(x, y, u, v, p, vorticity) on cell centers, interior only."""
        c = self.config
        nx, ny = c.nx, c.ny
        u = 0.5 * (self.U[1:nx + 1, 1:ny + 1] + self.U[2:nx + 2, 1:ny + 1])
        v = 0.5 * (self.V[1:nx + 1, 1:ny + 1] + self.V[1:nx + 1, 2:ny + 2])
        self._fill_ghosts()
        # vorticity dv/dx - du/dy lives at grid corners; average 4 to centers
        wc = ((self.V[1:nx + 2, 1:ny + 2] - self.V[0:nx + 1, 1:ny + 2])
              - (self.U[1:nx + 2, 1:ny + 2] - self.U[1:nx + 2, 0:ny + 1])) / c.h
        vort = 0.25 * (wc[:-1, :-1] + wc[1:, :-1] + wc[:-1, 1:] + wc[1:, 1:])
        x = (np.arange(nx) + 0.5) * c.h
        y = (np.arange(ny) + 0.5) * c.h
        return x, y, u, v, self.pressure[1:nx + 1, 1:ny + 1].copy(), vort
