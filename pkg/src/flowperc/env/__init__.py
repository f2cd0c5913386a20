from .dataset import (
    Dataset,
    DatasetWriter,
    N_SENSORS,
    csv_string,
    export_csv,
    import_csv,
    load_dataset,
)
from .motion import MOTION_KINDS, make_motion
from .surrogate import SurrogateWake
from .world import (
    ActionCommand,
    BACKENDS,
    EnvConfig,
    GEOMETRY_PRESETS,
    SAMPLE_INTERVAL,
    TwoCylinderEnv,
    WINDOW_TICKS,
    record_dataset,
)

__all__ = [
    "ActionCommand",
    "BACKENDS",
    "Dataset",
    "DatasetWriter",
    "EnvConfig",
    "GEOMETRY_PRESETS",
    "MOTION_KINDS",
    "N_SENSORS",
    "SAMPLE_INTERVAL",
    "SurrogateWake",
    "TwoCylinderEnv",
    "WINDOW_TICKS",
    "csv_string",
    "export_csv",
    "import_csv",
    "load_dataset",
    "make_motion",
    "record_dataset",
]
