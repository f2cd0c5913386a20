"""Perception-driven agents in unsteady cylinder wakes.

Subpackages:
    nn          -- small reverse-mode autodiff engine (conv1d, GRU, linear, Adam)
    sim         -- immersed-boundary incompressible Navier-Stokes solver
    env         -- two-cylinder agent environment (CFD and surrogate backends)
    perception  -- pressure encoder, predictive pretraining, obstacle head,
                   sensitivity maps
    rl          -- PPO with GAE driving the agent cylinder

Hot numeric kernels are numba-compiled by default; set FLOWPERC_DISABLE_NUMBA=1
to select the pure-numpy fallback path (same results, slower).
"""

__version__ = "0.1.0"
