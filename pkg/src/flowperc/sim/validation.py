"""Solver validation cases: single fixed cylinder, in-line oscillating
cylinder, Taylor-Green convergence, and a two-grid consistency check.

Targets (literature benchmarks for flow past a circular cylinder):
    fixed Re=100:   mean C_D 1.342 (+/-7%), max C_L 0.344 (+/-15%)
    St vs Re:       0.153 / 0.167 / 0.183 at Re 80 / 100 / 150
    in-line osc.:   max C_L 0.91 (+/-15%), mean C_D 1.71 (+/-10%)
                    (frequency = 2x fixed-body shedding, amplitude 0.14 D)
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .bodies import Harmonic, ImmersedBody
from .diagnostics import ForceHistory
from .solver import FlowSolver, SolverConfig

# domain for single-cylinder validation runs (in diameters)
VAL_LX = 28.0
VAL_LY = 14.0
VAL_XC = 9.0

FIXED_ST_BY_RE = {80: 0.153, 100: 0.167, 150: 0.183}


@dataclass
class CaseResult:
    name: str
    runtime_s: float
    history: ForceHistory
    stats: dict


def _run_forced(solver: FlowSolver, body: ImmersedBody, t_end: float,
                kick_t: float | None, kick_xy, sample_dt: float = 0.1,
                progress=None) -> ForceHistory:
    hist = ForceHistory()
    kicked = kick_t is None
    n_ticks = int(round(t_end / sample_dt))
    for k in range(1, n_ticks + 1):
        solver.advance_to(k * sample_dt)
        if not kicked and solver.t >= kick_t:
            solver.add_velocity_kick(0.4, *kick_xy)
            kicked = True
        f = solver.compute_forces(body)
        hist.append(f.t, f.cd, f.cl)
        if progress and k % 200 == 0:
            progress(solver.t, t_end)
    return hist


def fixed_cylinder_case(re: float, resolution: int = 32,
                        t_end: float = 260.0, t_stats: float = 70.0,
                        lx: float = VAL_LX, ly: float = VAL_LY,
                        xc: float = VAL_XC, marker_retract: float = 0.0,
                        progress=None) -> CaseResult:
    h = 1.0 / resolution
    cfg = SolverConfig(nx=round(lx * resolution), ny=round(ly * resolution),
                       h=h, re=re)
    body = ImmersedBody(xc, ly / 2.0, 0.5, h, name="cylinder",
                        marker_retract=marker_retract)
    solver = FlowSolver(cfg, [body])
    t0 = time.perf_counter()
    hist = _run_forced(solver, body, t_end, kick_t=2.0,
                       kick_xy=(xc + 1.5, ly / 2.0 + 0.75), progress=progress)
    stats = {
        "cd_mean": hist.mean_cd(t_stats),
        "cl_max": hist.max_cl(t_stats),
        "st": hist.strouhal(t_stats),
        "max_courant": solver.last_courant,
    }
    return CaseResult(f"fixed_re{re:g}_n{resolution}",
                      time.perf_counter() - t0, hist, stats)


def oscillating_cylinder_case(re: float = 100.0, resolution: int = 32,
                              freq_ratio: float = 2.0, amp: float = 0.14,
                              t_end: float = 200.0, t_stats: float = 80.0,
                              progress=None) -> CaseResult:
    """In-line oscillation at freq_ratio x the fixed-body shedding frequency."""
    h = 1.0 / resolution
    f0 = FIXED_ST_BY_RE[int(re)]
    cfg = SolverConfig(nx=round(VAL_LX * resolution),
                       ny=round(VAL_LY * resolution), h=h, re=re)
    motion = Harmonic(mean=0.0, amp=amp, freq=freq_ratio * f0,
                      phase=-math.pi / 2.0)
    body = ImmersedBody(VAL_XC, VAL_LY / 2.0, 0.5, h, motion_x=motion,
                        name="osc-cylinder")
    solver = FlowSolver(cfg, [body])
    t0 = time.perf_counter()
    hist = _run_forced(solver, body, t_end, kick_t=2.0,
                       kick_xy=(VAL_XC + 1.5, VAL_LY / 2.0 + 0.75),
                       progress=progress)
    stats = {
        "cd_mean": hist.mean_cd(t_stats),
        "cl_max": hist.max_cl(t_stats),
        "max_courant": solver.last_courant,
    }
    return CaseResult(f"oscillating_re{re:g}_n{resolution}",
                      time.perf_counter() - t0, hist, stats)


def taylor_green_case(n: int, re: float = 100.0, t_end: float = 2.0,
                      dt: float = 2e-3):
    """Decaying Taylor-Green vortex in a periodic 2*pi box.

    Returns the relative kinetic-energy decay error vs exp(-4*nu*t), the
    L2 velocity error vs the analytic field, and the worst per-step
    divergence.
    """
    L = 2.0 * math.pi
    h = L / n
    cfg = SolverConfig(nx=n, ny=n, h=h, re=re, periodic=True, dt_max=dt)
    solver = FlowSolver(cfg)
    nu = cfg.nu
    solver.set_velocity(lambda x, y: np.sin(x) * np.cos(y),
                        lambda x, y: -np.cos(x) * np.sin(y))

    def ke():
        u = solver.U[1:n + 2, 1:n + 1]
        v = solver.V[1:n + 1, 1:n + 2]
        return 0.5 * (float((u[:-1] ** 2 + u[1:] ** 2).sum()) / 2.0
                      + float((v[:, :-1] ** 2 + v[:, 1:] ** 2).sum()) / 2.0
                      ) * h * h

    ke0 = ke()
    max_div = 0.0
    while solver.t < t_end - 1e-12:
        solver.step(min(dt, t_end - solver.t))
        max_div = max(max_div, solver.max_divergence())

    decay = math.exp(-4.0 * nu * t_end)
    ke_err = abs(ke() / ke0 - decay) / decay

    f = math.exp(-2.0 * nu * t_end)
    xu, yu = np.meshgrid(np.arange(n + 1) * h, (np.arange(n) + 0.5) * h,
                         indexing="ij")
    u_exact = np.sin(xu) * np.cos(yu) * f
    err = solver.U[1:n + 2, 1:n + 1] - u_exact
    l2 = math.sqrt(float((err ** 2).sum()) * h * h)
    return {"ke_rel_err": ke_err, "u_l2_err": l2, "max_div": max_div,
            "ke_ratio": ke() / ke0, "expected_ratio": decay}


def taylor_green_order(n_coarse: int = 64, re: float = 100.0,
                       t_end: float = 0.5, dt: float = 2e-3):
    """Observed spatial order from the error ratio on n and 2n grids."""
    e1 = taylor_green_case(n_coarse, re, t_end, dt)
    e2 = taylor_green_case(2 * n_coarse, re, t_end, dt)
    ratio = e1["u_l2_err"] / e2["u_l2_err"]
    return {
        "err_coarse": e1["u_l2_err"],
        "err_fine": e2["u_l2_err"],
        "ratio": ratio,
        "order": math.log2(ratio),
        "max_div": max(e1["max_div"], e2["max_div"]),
        "ke_rel_err_coarse": e1["ke_rel_err"],
    }


def two_grid_consistency(re: float = 100.0, res_coarse: int = 24,
                         res_fine: int = 36, t_end: float = 130.0,
                         t_stats: float = 70.0, progress=None):
    """Mean C_D on grids h and h/1.5 (desk-size domain)."""
    out = {}
    for res in (res_coarse, res_fine):
        r = fixed_cylinder_case(re, resolution=res, t_end=t_end,
                                t_stats=t_stats, lx=24.0, ly=12.0, xc=8.0,
                                progress=progress)
        out[res] = r.stats["cd_mean"]
    a, b = out[res_coarse], out[res_fine]
    out["rel_diff"] = abs(a - b) / abs(b)
    return out
