"""CSV contracts published by the simulation pipeline, and validated loaders.

The three headers below are the interchange contract; figures are rendered
strictly from these files, never by recomputing the models.
"""

from __future__ import annotations

from pathlib import Path

import pandas as pd

GRID_COLUMNS = [
    "ue_x_km", "ue_y_km", "generation", "best_tx_id", "distance_tx_m",
    "path_loss_db", "rx_power_dbm", "interference_dbm", "noise_dbm",
    "snr_db", "sinr_db",
]
TEXTING_COLUMNS = ["trial_id", "attempt_type", "mode", "p_ic", "delivered"]
LOSSES_COLUMNS = [
    "attempt_type", "mode", "sector", "failed_count", "delivered_count",
    "total_loss_usd", "mean_loss_per_text_usd",
]


class SchemaError(ValueError):
    """An input CSV does not match the published header."""


def _load(path: str | Path, expected: list[str]) -> pd.DataFrame:
    frame = pd.read_csv(path)
    actual = list(frame.columns)
    missing = [c for c in expected if c not in actual]
    unexpected = [c for c in actual if c not in expected]
    if missing or unexpected:
        parts = []
        if missing:
            parts.append(f"missing column(s) {missing}")
        if unexpected:
            parts.append(f"unexpected column(s) {unexpected}")
        raise SchemaError(f"{path}: {'; '.join(parts)}")
    if actual != expected:
        raise SchemaError(f"{path}: columns out of order, expected {expected}")
    return frame


def load_grid(path: str | Path) -> pd.DataFrame:
    return _load(path, GRID_COLUMNS)


def load_texting(path: str | Path) -> pd.DataFrame:
    return _load(path, TEXTING_COLUMNS)


def load_losses(path: str | Path) -> pd.DataFrame:
    return _load(path, LOSSES_COLUMNS)
