from .bodies import Harmonic, Hold, ImmersedBody, MoveSegment, Schedule, make_move
from .diagnostics import ForceHistory, strouhal
from .poisson import MultigridPoisson
from .solver import FlowSolver, ForceSample, FluidParams, SolverConfig

__all__ = [
    "FlowSolver",
    "FluidParams",
    "ForceHistory",
    "ForceSample",
    "Harmonic",
    "Hold",
    "ImmersedBody",
    "MoveSegment",
    "MultigridPoisson",
    "Schedule",
    "SolverConfig",
    "make_move",
    "strouhal",
]
