"""Render heatmap, density, and bar figures from the pipeline CSVs.

Data preparation is separated from drawing so the numbers behind every bar
and panel are testable without decoding images. Output is deterministic for
identical inputs: fixed styles, fixed dpi, pinned PNG metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .schema import SchemaError, load_grid, load_losses, load_texting

FIGURE_KINDS = ("grid_heatmap", "pic_density", "delivery_bars", "loss_bars")

_DPI = 150
_PNG_METADATA = {"Software": "jamfigures"}
_MODE_COLORS = {"baseline": "#d62728", "partial": "#ff7f0e", "full": "#2ca02c"}
_FALLBACK_COLORS = ("#1f77b4", "#9467bd", "#8c564b", "#e377c2")


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: kind, input CSV path(s), output image path."""

    kind: str
    inputs: tuple[str, ...]
    output: str

    def __post_init__(self) -> None:
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; known: {FIGURE_KINDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.kind != "loss_bars" and len(self.inputs) > 1:
            raise ValueError(f"{self.kind} takes exactly one input CSV")


def _ordered_unique(values) -> list:
    seen: list = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen


def _mode_color(mode: str, index: int) -> str:
    return _MODE_COLORS.get(mode, _FALLBACK_COLORS[index % len(_FALLBACK_COLORS)])


# --- data preparation --------------------------------------------------------

def heatmap_panels(grid: pd.DataFrame, column: str = "interference_dbm") -> dict[str, np.ndarray]:
    """Per-generation 2D arrays of `column`, indexed [y][x] in km."""
    panels: dict[str, np.ndarray] = {}
    for generation in _ordered_unique(grid["generation"]):
        sub = grid[grid["generation"] == generation]
        pivot = sub.pivot(index="ue_y_km", columns="ue_x_km", values=column)
        panels[generation] = pivot.sort_index().sort_index(axis=1).to_numpy()
    return panels


def density_series(texting: pd.DataFrame) -> dict[str, dict[str, np.ndarray]]:
    """p_ic samples grouped as {attempt_type: {mode: values}}."""
    series: dict[str, dict[str, np.ndarray]] = {}
    for attempt in _ordered_unique(texting["attempt_type"]):
        sub = texting[texting["attempt_type"] == attempt]
        series[attempt] = {
            mode: sub[sub["mode"] == mode]["p_ic"].to_numpy()
            for mode in _ordered_unique(sub["mode"])
        }
    return series


def delivery_counts(texting: pd.DataFrame) -> dict[str, dict[str, int]]:
    """Delivered-message counts as {attempt_type: {mode: count}}."""
    counts: dict[str, dict[str, int]] = {}
    for attempt in _ordered_unique(texting["attempt_type"]):
        sub = texting[texting["attempt_type"] == attempt]
        counts[attempt] = {
            mode: int(sub[sub["mode"] == mode]["delivered"].sum())
            for mode in _ordered_unique(sub["mode"])
        }
    return counts


def loss_bar_stats(
    losses_frames: list[pd.DataFrame], attempt_type: str = "total"
) -> dict[tuple[str, str], tuple[float, float]]:
    """Mean and standard deviation of total_loss_usd per (sector, mode).

    Each frame is one replication (e.g. one seed); with a single frame the
    standard deviation is zero and bars carry no visible error.
    """
    samples: dict[tuple[str, str], list[float]] = {}
    for frame in losses_frames:
        sub = frame[frame["attempt_type"] == attempt_type]
        if sub.empty:
            raise SchemaError(f"no rows with attempt_type={attempt_type!r} in a losses file")
        for _, row in sub.iterrows():
            samples.setdefault((row["sector"], row["mode"]), []).append(
                float(row["total_loss_usd"])
            )
    return {
        key: (float(np.mean(vals)), float(np.std(vals))) for key, vals in samples.items()
    }


# --- drawing -----------------------------------------------------------------

def _save(fig, output: str | Path) -> Path:
    path = Path(output)
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def _render_grid_heatmap(inputs: tuple[str, ...], output: str) -> Path:
    panels = heatmap_panels(load_grid(inputs[0]))
    n = len(panels)
    fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 4.0), squeeze=False)
    for ax, (generation, values) in zip(axes[0], panels.items()):
        image = ax.imshow(values, origin="lower", cmap="viridis")
        ax.set_title(f"{generation} interference")
        ax.set_xlabel("UE x (km)")
        ax.set_ylabel("UE y (km)")
        fig.colorbar(image, ax=ax, label="interference (dBm)", shrink=0.8)
    fig.suptitle("Aggregate interference per cellular generation")
    fig.tight_layout()
    return _save(fig, output)


def _render_pic_density(inputs: tuple[str, ...], output: str) -> Path:
    series = density_series(load_texting(inputs[0]))
    attempts = list(series)
    fig, axes = plt.subplots(1, len(attempts), figsize=(5.5 * len(attempts), 4.0),
                             squeeze=False)
    bins = np.linspace(0.0, 1.0, 21)
    for ax, attempt in zip(axes[0], attempts):
        for i, (mode, values) in enumerate(series[attempt].items()):
            ax.hist(values, bins=bins, density=True, histtype="step", linewidth=1.8,
                    label=mode, color=_mode_color(mode, i))
        ax.set_title(f"{attempt} attempts")
        ax.set_xlabel("interception probability")
        ax.set_ylabel("density")
        ax.set_xlim(0.0, 1.0)
        ax.legend()
    fig.suptitle("Interception probability density per mode")
    fig.tight_layout()
    return _save(fig, output)


def _render_delivery_bars(inputs: tuple[str, ...], output: str) -> Path:
    counts = delivery_counts(load_texting(inputs[0]))
    attempts = list(counts)
    fig, axes = plt.subplots(1, len(attempts), figsize=(5.0 * len(attempts), 4.0),
                             squeeze=False)
    for ax, attempt in zip(axes[0], attempts):
        modes = list(counts[attempt])
        heights = [counts[attempt][m] for m in modes]
        colors = [_mode_color(m, i) for i, m in enumerate(modes)]
        ax.bar(modes, heights, color=colors)
        for x, h in enumerate(heights):
            ax.text(x, h, str(h), ha="center", va="bottom", fontsize=9)
        ax.set_title(f"{attempt} attempts")
        ax.set_ylabel("delivered messages")
    fig.suptitle("Delivered messages per mode")
    fig.tight_layout()
    return _save(fig, output)


def _render_loss_bars(inputs: tuple[str, ...], output: str) -> Path:
    frames = [load_losses(p) for p in inputs]
    stats = loss_bar_stats(frames)
    sectors = _ordered_unique(s for s, _ in stats)
    modes = _ordered_unique(m for _, m in stats)
    width = 0.8 / len(modes)
    x = np.arange(len(sectors))
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for i, mode in enumerate(modes):
        means = [stats[(sector, mode)][0] for sector in sectors]
        stds = [stats[(sector, mode)][1] for sector in sectors]
        offset = (i - (len(modes) - 1) / 2) * width
        ax.bar(x + offset, means, width, yerr=stds, capsize=3, label=mode,
               color=_mode_color(mode, i))
    ax.set_xticks(x, sectors)
    ax.set_ylabel("total loss (US$)")
    ax.set_title("Total losses per sector and mode (mean ± std over replications)")
    ax.legend()
    fig.tight_layout()
    return _save(fig, output)


_RENDERERS = {
    "grid_heatmap": _render_grid_heatmap,
    "pic_density": _render_pic_density,
    "delivery_bars": _render_delivery_bars,
    "loss_bars": _render_loss_bars,
}


def render(spec: FigureSpec) -> Path:
    """Render one figure; returns the written image path."""
    return _RENDERERS[spec.kind](spec.inputs, spec.output)
