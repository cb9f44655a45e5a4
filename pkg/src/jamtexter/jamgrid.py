"""Grid sweep of the jamming scenario.

Evaluates the full link budget at every integer UE position against all
transmitters and interceptors, per cellular generation, and selects the
serving transmitter with the highest SINR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .propagation import (
    GenerationParams,
    LinkBudget,
    Position,
    dbm_to_mw,
    euclidean_distance_m,
    mw_to_dbm,
    noise_power_dbm,
    path_loss_db,
    received_power_dbm,
    sinr_db,
)

# Free-space loss diverges at d -> 0; a UE standing on a site is evaluated at
# the conventional 1 m reference distance instead of crashing.
MIN_DISTANCE_M = 1.0

GRID_CSV_HEADER = (
    "ue_x_km,ue_y_km,generation,best_tx_id,distance_tx_m,path_loss_db,"
    "rx_power_dbm,interference_dbm,noise_dbm,snr_db,sinr_db"
)


@dataclass(frozen=True)
class Site:
    """A fixed transmitter or interceptor station."""

    id: str
    position: Position


@dataclass(frozen=True)
class Scenario:
    """Static geometry and radio parameters for one grid sweep."""

    transmitters: tuple[Site, ...]
    interceptors: tuple[Site, ...]
    generations: tuple[GenerationParams, ...]
    grid_side_km: float = 15.0

    def __post_init__(self) -> None:
        if not self.transmitters:
            raise ValueError("scenario needs at least one transmitter")
        if self.grid_side_km <= 0:
            raise ValueError(f"grid_side_km must be > 0, got {self.grid_side_km}")
        if not self.generations:
            raise ValueError("scenario needs at least one generation")
        for role, sites in (("transmitter", self.transmitters), ("interceptor", self.interceptors)):
            ids = [s.id for s in sites]
            if len(set(ids)) != len(ids):
                raise ValueError(f"duplicate {role} ids: {ids}")
            for site in sites:
                for coord in (site.position.x_km, site.position.y_km):
                    if not 0.0 <= coord <= self.grid_side_km:
                        raise ValueError(
                            f"{role} {site.id!r} at ({site.position.x_km}, {site.position.y_km}) "
                            f"lies outside the {self.grid_side_km} km grid"
                        )


@dataclass(frozen=True)
class CellResult:
    """Link budget of the best serving transmitter at one UE cell."""

    ue: Position
    generation: str
    best_tx_id: str
    link: LinkBudget


def _effective_distance_m(a: Position, b: Position) -> float:
    return max(euclidean_distance_m(a, b), MIN_DISTANCE_M)


def evaluate_cell(scenario: Scenario, ue: Position, generation: GenerationParams) -> CellResult:
    """Evaluate all transmitters at one UE position and keep the SINR argmax.

    Interference is the linear-domain sum over all interceptors, which are
    assumed to replicate the generation's transmit power. SINR ties between
    transmitters break to the lowest id so duplicated coordinates stay
    deterministic. Reported distances are the effective (floored) ones, so
    each row is self-consistent with its path loss.
    """
    for coord in (ue.x_km, ue.y_km):
        if not 0.0 <= coord <= scenario.grid_side_km:
            raise ValueError(f"UE ({ue.x_km}, {ue.y_km}) lies outside the grid")

    noise_dbm = noise_power_dbm(generation)
    ix_distances_m = tuple(
        _effective_distance_m(ue, site.position) for site in scenario.interceptors
    )
    interference_each_dbm = [
        received_power_dbm(generation.tx_power_dbm, path_loss_db(d, generation.frequency_hz))
        for d in ix_distances_m
    ]
    interference_dbm = mw_to_dbm(sum(dbm_to_mw(i) for i in interference_each_dbm))

    best: CellResult | None = None
    for site in sorted(scenario.transmitters, key=lambda s: s.id):
        distance_m = _effective_distance_m(ue, site.position)
        loss_db = path_loss_db(distance_m, generation.frequency_hz)
        rx_dbm = received_power_dbm(generation.tx_power_dbm, loss_db)
        link = LinkBudget(
            distance_tx_m=distance_m,
            distance_ix_each_m=ix_distances_m,
            path_loss_tx_db=loss_db,
            rx_power_dbm=rx_dbm,
            interference_dbm=interference_dbm,
            noise_dbm=noise_dbm,
            snr_db=rx_dbm - noise_dbm,
            sinr_db=sinr_db(rx_dbm, interference_each_dbm, noise_dbm),
        )
        if best is None or link.sinr_db > best.link.sinr_db:
            best = CellResult(ue=ue, generation=generation.name, best_tx_id=site.id, link=link)
    assert best is not None
    return best


def sweep_grid(scenario: Scenario) -> list[CellResult]:
    """Evaluate every integer UE position for every generation.

    Positions form the inclusive lattice {0, ..., floor(side)}^2; emission is
    row-major by (y, x), then generation order as configured. The default
    15 km scenario therefore yields 16 x 16 x |generations| rows.
    """
    side = math.floor(scenario.grid_side_km)
    results: list[CellResult] = []
    for y in range(side + 1):
        for x in range(side + 1):
            ue = Position(x_km=float(x), y_km=float(y))
            for generation in scenario.generations:
                results.append(evaluate_cell(scenario, ue, generation))
    return results


def grid_csv_rows(results: list[CellResult]) -> list[str]:
    """Render sweep results as CSV lines (header included, 6 significant digits)."""
    lines = [GRID_CSV_HEADER]
    for r in results:
        lines.append(
            f"{r.ue.x_km:g},{r.ue.y_km:g},{r.generation},{r.best_tx_id},"
            f"{r.link.distance_tx_m:.6g},{r.link.path_loss_tx_db:.6g},"
            f"{r.link.rx_power_dbm:.6g},{r.link.interference_dbm:.6g},"
            f"{r.link.noise_dbm:.6g},{r.link.snr_db:.6g},{r.link.sinr_db:.6g}"
        )
    return lines


def write_grid_csv(results: list[CellResult], path: str | Path) -> int:
    """Write grid_results.csv; returns the number of data rows."""
    lines = grid_csv_rows(results)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return len(lines) - 1
