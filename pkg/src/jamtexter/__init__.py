"""jamtexter: jamming-grid, secure-texting, and message-loss simulator."""

__version__ = "0.1.0"

from .config import RunConfig, default_config, load_config
from .econ import Coefficients, CostTable, LossRecord, aggregate_losses, lookup_cost, message_loss
from .jamgrid import CellResult, Scenario, Site, evaluate_cell, sweep_grid
from .pipeline import RunManifest, run_pipeline
from .propagation import (
    GenerationParams,
    LinkBudget,
    Position,
    euclidean_distance_m,
    noise_power_dbm,
    path_loss_db,
    received_power_dbm,
    sinr_db,
)
from .textsim import (
    InterceptorProfile,
    NetworkProbSet,
    TransmissionMode,
    TrialOutcome,
    delivery_indicator,
    enumerate_exact,
    run_trials,
    sample_p_ic,
)

__all__ = [
    "__version__",
    "RunConfig",
    "default_config",
    "load_config",
    "Coefficients",
    "CostTable",
    "LossRecord",
    "aggregate_losses",
    "lookup_cost",
    "message_loss",
    "CellResult",
    "Scenario",
    "Site",
    "evaluate_cell",
    "sweep_grid",
    "RunManifest",
    "run_pipeline",
    "GenerationParams",
    "LinkBudget",
    "Position",
    "euclidean_distance_m",
    "noise_power_dbm",
    "path_loss_db",
    "received_power_dbm",
    "sinr_db",
    "InterceptorProfile",
    "NetworkProbSet",
    "TransmissionMode",
    "TrialOutcome",
    "delivery_indicator",
    "enumerate_exact",
    "run_trials",
    "sample_p_ic",
]
