"""Geometric multigrid for the cell-centered pressure Poisson equation.

Solves  lap(phi) = rhs  with homogeneous Neumann or fully periodic boundary
conditions (both singular: the nullspace is handled by mean subtraction).
V(2,2) cycles with red-black Gauss-Seidel smoothing; level arrays are
preallocated so repeated solves do not allocate.
"""

import numpy as np

from ..errors import FlowpercError
from . import kernels as K


class PoissonConvergenceError(FlowpercError):
    pass


def _fill_ghosts(A, periodic: bool):
    if periodic:
        A[0, :] = A[-2, :]
        A[-1, :] = A[1, :]
        A[:, 0] = A[:, -2]
        A[:, -1] = A[:, 1]
    else:
        A[0, :] = A[1, :]
        A[-1, :] = A[-2, :]
        A[:, 0] = A[:, 1]
        A[:, -1] = A[:, -2]


class MultigridPoisson:
    def __init__(self, nx: int, ny: int, h: float, periodic: bool = False,
                 pre_sweeps: int = 2, post_sweeps: int = 2):
        self.periodic = periodic
        self.pre = pre_sweeps
        self.post = post_sweeps
        self.levels = []
        n, m, hh = nx, ny, h
        while True:
            self.levels.append({
                "n": n, "m": m, "h2": hh * hh,
                "phi": np.zeros((n + 2, m + 2)),
                "rhs": np.zeros((n + 2, m + 2)),
                "res": np.zeros((n + 2, m + 2)),
            })
            if n % 2 or m % 2 or n // 2 < 3 or m // 2 < 3:
                break
            n, m, hh = n // 2, m // 2, hh * 2
        self._phi_prev = np.zeros((nx + 2, ny + 2))
        self._scratch = np.zeros((nx + 2, ny + 2))
        self._prev_valid = False

    def _smooth(self, lev, sweeps):
        L = self.levels[lev]
        for _ in range(sweeps):
            for color in (0, 1):
                _fill_ghosts(L["phi"], self.periodic)
                K.rbgs_color(L["phi"], L["rhs"], L["h2"], color)
        _fill_ghosts(L["phi"], self.periodic)

    def _vcycle(self, lev):
        L = self.levels[lev]
        if lev == len(self.levels) - 1:
            self._smooth(lev, 50)
            return
        self._smooth(lev, self.pre)
        K.residual(L["phi"], L["rhs"], L["res"], L["h2"])
        C = self.levels[lev + 1]
        K.restrict_fw(L["res"], C["rhs"])
        C["phi"][:] = 0.0
        self._vcycle(lev + 1)
        _fill_ghosts(C["phi"], self.periodic)
        K.prolong_add(L["phi"], C["phi"])
        self._smooth(lev, self.post)

    @property
    def rhs0(self):
        """Fine-level rhs buffer; callers may fill it directly."""
        return self.levels[0]["rhs"]

    @property
    def phi0(self):
        """Fine-level solution buffer (persists across solves: warm start)."""
        return self.levels[0]["phi"]

    def solve(self, rhs=None, phi=None, tol: float = 1e-7,
              max_cycles: int = 60, extrapolate: float | None = None):
        """Solve to max-norm residual < tol. Returns (phi, residual, cycles).

        With no arguments the persistent fine-level buffers are used in
        place: rhs0 must already hold the right-hand side, and phi0 (the
        previous solution) seeds the iteration. `extrapolate=r` warms the
        start further with phi + r*(phi - phi_prev). rhs is mean-adjusted
        for compatibility.
        """
        L0 = self.levels[0]
        n, m = L0["n"], L0["m"]
        inner = np.s_[1:n + 1, 1:m + 1]
        if rhs is not None and rhs is not L0["rhs"]:
            L0["rhs"][:] = rhs
        if phi is not None and phi is not L0["phi"]:
            L0["phi"][:] = phi
        L0["rhs"][inner] -= L0["rhs"][inner].mean()
        if extrapolate is not None:
            if self._prev_valid:
                np.subtract(L0["phi"], self._phi_prev, out=self._scratch)
                np.copyto(self._phi_prev, L0["phi"])
                self._scratch *= extrapolate
                L0["phi"] += self._scratch
            else:
                np.copyto(self._phi_prev, L0["phi"])
                self._prev_valid = True
        _fill_ghosts(L0["phi"], self.periodic)
        rnorm = K.residual(L0["phi"], L0["rhs"], L0["res"], L0["h2"])
        cycles = 0
        while rnorm > tol:
            if cycles >= max_cycles:
                raise PoissonConvergenceError(
                    f"multigrid stalled at residual {rnorm:.3e} after "
                    f"{cycles} cycles (tol {tol:.1e})"
                )
            self._vcycle(0)
            _fill_ghosts(L0["phi"], self.periodic)
            rnorm = K.residual(L0["phi"], L0["rhs"], L0["res"], L0["h2"])
            cycles += 1
        L0["phi"][inner] -= L0["phi"][inner].mean()
        _fill_ghosts(L0["phi"], self.periodic)
        return L0["phi"], rnorm, cycles
