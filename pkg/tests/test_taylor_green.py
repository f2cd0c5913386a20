import pytest

from flowperc.sim.validation import taylor_green_case, taylor_green_order


def test_energy_decay_matches_analytic():
    r = taylor_green_case(64, re=100.0, t_end=2.0, dt=2e-3)
    assert r["ke_rel_err"] < 0.01
    assert r["max_div"] < 1e-6


def test_spatial_order_at_least_1p8():
    r = taylor_green_order(64, t_end=0.5, dt=2e-3)
    assert r["order"] >= 1.8
    assert r["max_div"] < 1e-6
