"""End-to-end pipeline: grid sweep, texting trials, loss aggregation, artifacts.

Stages run sequentially and exchange plain in-memory records; the CSV files
plus manifest.json are the only outputs. Byte output is deterministic per
(config, seed) except for the manifest's duration field.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, config_sha256
from .econ import aggregate_losses, write_losses_csv
from .jamgrid import sweep_grid, write_grid_csv
from .textsim import run_trials, write_texting_csv

# Pinned RNG identity, recorded in every manifest for reproducibility.
RNG_ALGORITHM = f"philox4x64 (numpy.random.Philox, numpy {np.__version__})"

MANIFEST_FILENAME = "manifest.json"
GRID_FILENAME = "grid_results.csv"
TEXTING_FILENAME = "texting_results.csv"
LOSSES_FILENAME = "losses.csv"


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record written once per pipeline run."""

    config_sha256: str
    seed: int
    version: str
    rows: dict[str, int]
    duration_ms: float


def manifest_to_dict(manifest: RunManifest) -> dict:
    return {
        "config_sha256": manifest.config_sha256,
        "seed": manifest.seed,
        "version": manifest.version,
        "rows": dict(manifest.rows),
        "duration_ms": manifest.duration_ms,
    }


def write_manifest(manifest: RunManifest, path: str | Path) -> None:
    text = json.dumps(manifest_to_dict(manifest), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def ensure_out_dir(out_dir: str | Path) -> Path:
    """Create the output directory if missing; its parent must already exist."""
    path = Path(out_dir)
    path.mkdir(exist_ok=True)
    return path


def _stage(name: str, fn, *args):
    try:
        return fn(*args)
    except (OSError, ValueError):
        raise
    except Exception as exc:
        raise RuntimeError(f"{name} stage failed: {exc}") from exc


def run_grid_stage(config: RunConfig, out_dir: Path) -> int:
    results = _stage("grid", sweep_grid, config.scenario)
    return write_grid_csv(results, out_dir / GRID_FILENAME)


def run_text_stage(config: RunConfig, out_dir: Path) -> tuple[list, int]:
    outcomes = _stage(
        "texting",
        run_trials,
        config.modes,
        config.network_sets,
        config.interceptor,
        config.n_trials,
        config.seed,
        config.combination_rule,
    )
    rows = write_texting_csv(outcomes, out_dir / TEXTING_FILENAME)
    return outcomes, rows


def run_losses_stage(config: RunConfig, outcomes: list, out_dir: Path) -> int:
    records = _stage("losses", aggregate_losses, outcomes, config.coefficients, config.cost_table)
    return write_losses_csv(records, out_dir / LOSSES_FILENAME)


def run_pipeline(config: RunConfig) -> RunManifest:
    """Run all stages, write the four artifacts, and return the manifest."""
    started = time.perf_counter()
    out_dir = ensure_out_dir(config.out_dir)

    grid_rows = run_grid_stage(config, out_dir)
    outcomes, texting_rows = run_text_stage(config, out_dir)
    losses_rows = run_losses_stage(config, outcomes, out_dir)

    manifest = RunManifest(
        config_sha256=config_sha256(config),
        seed=config.seed,
        version=f"jamtexter {__version__}; rng {RNG_ALGORITHM}",
        rows={"grid": grid_rows, "texting": texting_rows, "losses": losses_rows},
        duration_ms=(time.perf_counter() - started) * 1000.0,
    )
    write_manifest(manifest, out_dir / MANIFEST_FILENAME)
    return manifest
