import numpy as np
import pytest

from flowperc.sim.poisson import MultigridPoisson


def _manufactured(nx, ny, h, periodic):
    x = (np.arange(nx) + 0.5) * h
    y = (np.arange(ny) + 0.5) * h
    X, Y = np.meshgrid(x, y, indexing="ij")
    kx = 2 * np.pi / (nx * h)
    ky = 2 * np.pi / (ny * h)
    exact = np.cos(kx * X) * np.cos(ky * Y)
    rhs = np.zeros((nx + 2, ny + 2))
    rhs[1:-1, 1:-1] = -(kx ** 2 + ky ** 2) * exact
    return rhs, exact


@pytest.mark.parametrize("periodic", [False, True])
def test_poisson_manufactured(periodic):
    nx, ny, h = 96, 48, 1.0 / 32
    mg = MultigridPoisson(nx, ny, h, periodic=periodic)
    rhs, exact = _manufactured(nx, ny, h, periodic)
    phi, res, cycles = mg.solve(rhs, tol=1e-9)
    assert res < 1e-9
    sol = phi[1:-1, 1:-1] - phi[1:-1, 1:-1].mean()
    # 2nd-order discretization error at h = 1/32
    assert np.abs(sol - exact).max() < 5e-3
    assert cycles < 25


def test_poisson_warm_start_reduces_cycles():
    nx, ny, h = 128, 64, 1.0 / 32
    mg = MultigridPoisson(nx, ny, h)
    rhs, _ = _manufactured(nx, ny, h, False)
    _, _, cold = mg.solve(rhs.copy(), tol=1e-8)
    rhs2 = rhs * 1.01
    _, _, warm = mg.solve(rhs2, tol=1e-8)   # phi0 kept from previous solve
    assert warm < cold


def test_poisson_discretization_convergence():
    errs = []
    for nx in (32, 64):
        h = 1.0 / nx
        mg = MultigridPoisson(nx, nx, h)
        rhs, exact = _manufactured(nx, nx, h, False)
        phi, _, _ = mg.solve(rhs, tol=1e-11)
        sol = phi[1:-1, 1:-1] - phi[1:-1, 1:-1].mean()
        errs.append(np.abs(sol - exact).max())
    assert errs[0] / errs[1] > 3.5
