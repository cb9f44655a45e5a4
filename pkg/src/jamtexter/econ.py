"""Dollar losses for intercepted or blocked messages.

A failed message costs alpha(mode) * beta(sector) * cost(p_ic), where the
cost comes from a decile lookup table; delivered messages cost nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .textsim import TrialOutcome

SECTORS = ("private", "commercial", "government", "military")
TOTAL_ATTEMPT_TYPE = "total"

_DECILES = tuple(round(0.1 * i, 1) for i in range(1, 10))

LOSSES_CSV_HEADER = (
    "attempt_type,mode,sector,failed_count,delivered_count,"
    "total_loss_usd,mean_loss_per_text_usd"
)


@dataclass(frozen=True)
class CostTable:
    """Cost per message keyed by interception-probability decile.

    Breakpoints are (decile, cost) pairs covering 0.1 through 0.9; the first
    and last buckets absorb anything below 0.1 or above 0.9. Costs must be
    non-increasing in probability.
    """

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        deciles = tuple(p for p, _ in self.breakpoints)
        if deciles != _DECILES:
            raise ValueError(
                f"cost table must cover deciles {_DECILES} in order, got {deciles}"
            )
        costs = [c for _, c in self.breakpoints]
        for lower, upper in zip(costs[1:], costs[:-1]):
            if lower > upper:
                raise ValueError(f"cost table must be non-increasing, got {costs}")

    def cost_for_decile(self, decile_index: int) -> float:
        return self.breakpoints[decile_index - 1][1]


@dataclass(frozen=True)
class Coefficients:
    """Loss multipliers per transmission mode (alpha) and sector (beta)."""

    alpha: dict[str, float]
    beta: dict[str, float]

    def __post_init__(self) -> None:
        for name, mapping in (("alpha", self.alpha), ("beta", self.beta)):
            if not mapping:
                raise ValueError(f"{name} coefficients must be non-empty")
            for key, value in mapping.items():
                if value <= 0:
                    raise ValueError(f"{name}[{key!r}] must be > 0, got {value}")


@dataclass(frozen=True)
class LossRecord:
    """Aggregated losses for one (attempt_type, mode, sector) cell.

    failed_count + delivered_count equals the number of outcomes aggregated
    into the record: n_trials for a single attempt type, twice that for the
    synthesized "total" rows.
    """

    attempt_type: str
    mode: str
    sector: str
    failed_count: int
    delivered_count: int
    total_loss_usd: float
    mean_loss_per_text_usd: float


def probability_decile(p_ic: float) -> int:
    """Nearest-0.1 bucket index in 1..9, rounding half away from zero.

    The pre-round to 9 decimals keeps float noise from flipping exact .x5
    boundary values (e.g. 0.45 -> bucket 5, 0.25 -> bucket 3).
    """
    if not 0.0 <= p_ic <= 1.0:
        raise ValueError(f"p_ic must be in [0, 1], got {p_ic}")
    decile = math.floor(round(p_ic * 10.0, 9) + 0.5)
    return min(9, max(1, decile))


def lookup_cost(table: CostTable, p_ic: float) -> float:
    """Per-message cost for a given interception probability."""
    return table.cost_for_decile(probability_decile(p_ic))


def message_loss(
    outcome: TrialOutcome,
    coeffs: Coefficients,
    sector: str,
    table: CostTable,
) -> float:
    """Loss for one message: alpha * beta * cost when it failed, else 0."""
    if outcome.mode not in coeffs.alpha:
        raise ValueError(f"no alpha coefficient for mode {outcome.mode!r}")
    if sector not in coeffs.beta:
        raise ValueError(f"no beta coefficient for sector {sector!r}")
    if outcome.delivered:
        return 0.0
    return coeffs.alpha[outcome.mode] * coeffs.beta[sector] * lookup_cost(table, outcome.p_ic)


def _ordered_unique(values: Iterable[str]) -> list[str]:
    seen: list[str] = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen


def aggregate_losses(
    outcomes: Sequence[TrialOutcome],
    coeffs: Coefficients,
    table: CostTable,
) -> list[LossRecord]:
    """One LossRecord per (attempt_type x mode x sector), plus "total" rows.

    Rows are ordered attempt type (as encountered, then "total"), then mode
    (as encountered), then sector (beta map order). "total" rows sum the
    per-attempt counts and losses for each (mode, sector).
    """
    if not outcomes:
        raise ValueError("cannot aggregate an empty outcome list")

    attempt_types = _ordered_unique(o.attempt_type for o in outcomes)
    modes = _ordered_unique(o.mode for o in outcomes)
    sectors = list(coeffs.beta)

    loss_sum: dict[tuple[str, str, str], float] = {}
    failed: dict[tuple[str, str], int] = {}
    delivered: dict[tuple[str, str], int] = {}
    for o in outcomes:
        key = (o.attempt_type, o.mode)
        if o.delivered:
            delivered[key] = delivered.get(key, 0) + 1
        else:
            failed[key] = failed.get(key, 0) + 1
        for sector in sectors:
            skey = (o.attempt_type, o.mode, sector)
            loss_sum[skey] = loss_sum.get(skey, 0.0) + message_loss(o, coeffs, sector, table)

    records: list[LossRecord] = []
    for attempt_type in attempt_types:
        for mode in modes:
            n_failed = failed.get((attempt_type, mode), 0)
            n_delivered = delivered.get((attempt_type, mode), 0)
            n_texts = n_failed + n_delivered
            for sector in sectors:
                total = loss_sum.get((attempt_type, mode, sector), 0.0)
                records.append(
                    LossRecord(
                        attempt_type=attempt_type,
                        mode=mode,
                        sector=sector,
                        failed_count=n_failed,
                        delivered_count=n_delivered,
                        total_loss_usd=total,
                        mean_loss_per_text_usd=total / n_texts if n_texts else 0.0,
                    )
                )
    for mode in modes:
        n_failed = sum(failed.get((a, mode), 0) for a in attempt_types)
        n_delivered = sum(delivered.get((a, mode), 0) for a in attempt_types)
        n_texts = n_failed + n_delivered
        for sector in sectors:
            total = sum(loss_sum.get((a, mode, sector), 0.0) for a in attempt_types)
            records.append(
                LossRecord(
                    attempt_type=TOTAL_ATTEMPT_TYPE,
                    mode=mode,
                    sector=sector,
                    failed_count=n_failed,
                    delivered_count=n_delivered,
                    total_loss_usd=total,
                    mean_loss_per_text_usd=total / n_texts if n_texts else 0.0,
                )
            )
    return records


def losses_csv_rows(records: Iterable[LossRecord]) -> list[str]:
    lines = [LOSSES_CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.attempt_type},{r.mode},{r.sector},{r.failed_count},{r.delivered_count},"
            f"{r.total_loss_usd:.2f},{r.mean_loss_per_text_usd:.2f}"
        )
    return lines


def write_losses_csv(records: Iterable[LossRecord], path: str | Path) -> int:
    """Write losses.csv; returns the number of data rows."""
    lines = losses_csv_rows(records)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return len(lines) - 1
