"""Exception taxonomy shared across the package.

CLI exit codes: ConfigError -> 2, ValidationFailure -> 1, everything else
raised from numerics/runtime -> 3.
"""


class FlowpercError(Exception):
    """Base class for all package errors."""


class ConfigError(FlowpercError):
    """Invalid configuration: bad key, bad value, inconsistent shapes."""


class ShapeError(ConfigError):
    """Tensor/array shape mismatch."""


class GeometryError(ConfigError):
    """Body or sample point incompatible with the computational domain."""


class ProtocolError(FlowpercError):
    """API called out of order (e.g. action before reset)."""


class DataError(FlowpercError):
    """Dataset missing, too short, or malformed."""


class StageDependencyError(DataError):
    """A pipeline stage's upstream artifact is missing."""

    def __init__(self, missing: str, stage_to_run: str):
        super().__init__(
            f"missing artifact {missing!r}; run stage {stage_to_run!r} first"
        )
        self.missing = missing
        self.stage_to_run = stage_to_run


class NumericalDomainError(FlowpercError):
    """Operation evaluated outside its numerical domain (e.g. zero-norm vector)."""


class TrainingError(FlowpercError):
    """Non-finite loss/gradient or other optimization failure."""


class BlowUpError(FlowpercError):
    """Flow solver produced non-finite fields."""

    def __init__(self, t: float, courant: float):
        super().__init__(
            f"flow field blew up at t={t:.4f} (max Courant {courant:.3f})"
        )
        self.t = t
        self.courant = courant


class NonSheddingError(FlowpercError):
    """Signal has no zero crossings; no shedding frequency to measure."""


class ValidationFailure(FlowpercError):
    """A validation case missed its tolerance."""
