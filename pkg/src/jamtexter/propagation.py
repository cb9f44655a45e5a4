"""Free-space link-budget math: distances, path loss, powers, SNR and SINR.

All functions are pure. Units are carried in every name: positions in
kilometers, distances in meters, powers in dBm, ratios in dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT_M_S = 2.998e8
THERMAL_NOISE_DBM_PER_HZ = -174.0
DEFAULT_NOISE_FIGURE_DB = 5.0

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class Position:
    """A point on the scenario grid, in kilometers."""

    x_km: float
    y_km: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_km) and math.isfinite(self.y_km)):
            raise ValueError(f"position coordinates must be finite, got ({self.x_km}, {self.y_km})")


@dataclass(frozen=True)
class GenerationParams:
    """Radio parameters of one cellular generation (2G/3G/4G/5G)."""

    name: str
    frequency_hz: float
    bandwidth_hz: float
    tx_power_dbm: float
    noise_figure_db: float = DEFAULT_NOISE_FIGURE_DB

    def __post_init__(self) -> None:
        if self.frequency_hz <= 0:
            raise ValueError(f"generation {self.name!r}: frequency_hz must be > 0")
        if self.bandwidth_hz <= 0:
            raise ValueError(f"generation {self.name!r}: bandwidth_hz must be > 0")


@dataclass(frozen=True)
class LinkBudget:
    """Full link budget at one receiver position for one serving transmitter."""

    distance_tx_m: float
    distance_ix_each_m: tuple[float, ...]
    path_loss_tx_db: float
    rx_power_dbm: float
    interference_dbm: float  # aggregate over all interferers, linear-domain sum
    noise_dbm: float
    snr_db: float
    sinr_db: float


def euclidean_distance_m(a: Position, b: Position) -> float:
    """Straight-line distance between two grid positions, converted to meters."""
    return math.hypot(a.x_km - b.x_km, a.y_km - b.y_km) * 1000.0


def path_loss_db(distance_m: float, frequency_hz: float) -> float:
    """Free-space path loss in dB: 20 log10(4π d f / c).

    Strictly increasing in both distance and frequency. Raises for
    non-positive inputs (log singularity); callers choose the d -> 0 policy.
    """
    if distance_m <= 0:
        raise ValueError(f"distance_m must be > 0, got {distance_m}")
    if frequency_hz <= 0:
        raise ValueError(f"frequency_hz must be > 0, got {frequency_hz}")
    return 20.0 * math.log10(_FOUR_PI * distance_m * frequency_hz / SPEED_OF_LIGHT_M_S)


def noise_power_dbm(generation: GenerationParams) -> float:
    """Receiver noise floor: -174 dBm/Hz + 10 log10(bandwidth) + noise figure."""
    return (
        THERMAL_NOISE_DBM_PER_HZ
        + 10.0 * math.log10(generation.bandwidth_hz)
        + generation.noise_figure_db
    )


def received_power_dbm(tx_power_dbm: float, loss_db: float) -> float:
    """Power at the receiver: transmit power minus path loss (0 dBi gains)."""
    return tx_power_dbm - loss_db


def dbm_to_mw(power_dbm: float) -> float:
    return 10.0 ** (power_dbm / 10.0)


def mw_to_dbm(power_mw: float) -> float:
    if power_mw <= 0:
        return -math.inf
    return 10.0 * math.log10(power_mw)


def sinr_db(signal_dbm: float, interference_dbm_each: list[float], noise_dbm: float) -> float:
    """Signal to interference-plus-noise ratio in dB.

    Terms are converted to linear milliwatts, interferers are summed, and the
    ratio is taken against signal power. With no interferers this is exactly
    the SNR (signal minus noise in dB).
    """
    interference_mw = sum(dbm_to_mw(i) for i in interference_dbm_each)
    denominator_mw = interference_mw + dbm_to_mw(noise_dbm)
    return 10.0 * math.log10(dbm_to_mw(signal_dbm) / denominator_mw)
