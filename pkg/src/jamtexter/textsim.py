"""Monte Carlo model of secure texting over untrusted networks.

Each trial draws one success value per network and one interceptor value,
combines them into an interception probability, and thresholds it into a
delivery bit. All finite probability sets are small, so the module also
ships an exact enumeration oracle over the joint sample space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

ATTEMPT_TYPES = ("interception", "blocking")
MODE_NAMES = ("baseline", "partial", "full")
DELIVERY_THRESHOLD = 0.5
MAX_ENUMERATION_STATES = 10_000_000

# A combination rule collapses the per-site draws and the interceptor draw
# into one interception probability in [0, 1].
CombinationRule = Callable[[Sequence[float], float], float]


def _sum_minus_interceptor(site_values: Sequence[float], interceptor_value: float) -> float:
    return min(1.0, max(0.0, sum(site_values) - interceptor_value))


COMBINATION_RULES: dict[str, CombinationRule] = {
    "sum_minus_interceptor": _sum_minus_interceptor,
}
DEFAULT_COMBINATION_RULE = "sum_minus_interceptor"


def _validate_probabilities(kind: str, name: str, values: Sequence[float]) -> None:
    if not values:
        raise ValueError(f"{kind} {name!r} needs at least one probability")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{kind} {name!r}: probability {v} outside [0, 1]")


@dataclass(frozen=True)
class NetworkProbSet:
    """Per-network message success probabilities (finite, equiprobable)."""

    id: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        _validate_probabilities("network set", self.id, self.values)


@dataclass(frozen=True)
class InterceptorProfile:
    """Interceptor read/block probabilities (finite, equiprobable)."""

    id: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        _validate_probabilities("interceptor", self.id, self.values)


@dataclass(frozen=True)
class TransmissionMode:
    """A named subset of networks a message is split across."""

    name: str
    networks: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.name not in MODE_NAMES:
            raise ValueError(f"mode name must be one of {MODE_NAMES}, got {self.name!r}")
        if not self.networks:
            raise ValueError(f"mode {self.name!r} needs at least one network")


@dataclass(frozen=True)
class TrialOutcome:
    """One simulated message attempt."""

    trial_id: int
    attempt_type: str
    mode: str
    p_ic: float
    delivered: int


class ExactResult(NamedTuple):
    expected_p_ic: float
    delivery_probability: float


def get_combination_rule(name: str) -> CombinationRule:
    try:
        return COMBINATION_RULES[name]
    except KeyError:
        raise ValueError(
            f"unknown combination rule {name!r}; known: {sorted(COMBINATION_RULES)}"
        ) from None


def delivery_indicator(p_ic: float) -> int:
    """1 when the message goes through (p_ic >= 0.5, boundary inclusive), else 0."""
    if not 0.0 <= p_ic <= 1.0:
        raise ValueError(f"p_ic must be in [0, 1], got {p_ic}")
    return 1 if p_ic >= DELIVERY_THRESHOLD else 0


def _sets_by_id(network_sets: Sequence[NetworkProbSet]) -> dict[str, NetworkProbSet]:
    by_id: dict[str, NetworkProbSet] = {}
    for ns in network_sets:
        if ns.id in by_id:
            raise ValueError(f"duplicate network set id {ns.id!r}")
        by_id[ns.id] = ns
    return by_id


def _resolve_mode(
    mode: TransmissionMode, by_id: Mapping[str, NetworkProbSet]
) -> list[NetworkProbSet]:
    missing = [n for n in mode.networks if n not in by_id]
    if missing:
        raise ValueError(f"mode {mode.name!r} references unknown network sets {missing}")
    return [by_id[n] for n in mode.networks]


def combine_p_ic(
    mode: TransmissionMode,
    site_values: Mapping[str, float],
    interceptor_value: float,
    rule: str = DEFAULT_COMBINATION_RULE,
) -> float:
    """Collapse already-drawn per-network values into one p_ic for a mode."""
    missing = [n for n in mode.networks if n not in site_values]
    if missing:
        raise ValueError(f"mode {mode.name!r} is missing draws for {missing}")
    picked = [site_values[n] for n in mode.networks]
    p_ic = get_combination_rule(rule)(picked, interceptor_value)
    if not 0.0 <= p_ic <= 1.0:
        raise ValueError(f"combination rule {rule!r} produced {p_ic} outside [0, 1]")
    return p_ic


def sample_p_ic(
    mode: TransmissionMode,
    network_sets: Sequence[NetworkProbSet],
    interceptor: InterceptorProfile,
    rng: np.random.Generator,
    rule: str = DEFAULT_COMBINATION_RULE,
) -> float:
    """Draw one value per participating network plus one interceptor value."""
    by_id = _sets_by_id(network_sets)
    participating = _resolve_mode(mode, by_id)
    draws = {ns.id: ns.values[int(rng.integers(len(ns.values)))] for ns in participating}
    interceptor_value = interceptor.values[int(rng.integers(len(interceptor.values)))]
    return combine_p_ic(mode, draws, interceptor_value, rule)


def attempt_rng(seed: int, attempt_type: str) -> np.random.Generator:
    """Philox generator on the substream indexed by the attempt type ordinal.

    Substreams are derived as SeedSequence(seed, spawn_key=(ordinal,)), so
    interception (0) and blocking (1) consume provably disjoint streams of a
    counter-based generator and stay reproducible across platforms.
    """
    ordinal = ATTEMPT_TYPES.index(attempt_type)
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(ordinal,))
    return np.random.Generator(np.random.Philox(seq))


def run_trials(
    modes: Sequence[TransmissionMode],
    network_sets: Sequence[NetworkProbSet],
    interceptor: InterceptorProfile,
    n_trials: int,
    seed: int,
    rule: str = DEFAULT_COMBINATION_RULE,
) -> list[TrialOutcome]:
    """Run seeded trials for both attempt types under common random numbers.

    Within a trial, every configured network set and the interceptor are
    drawn exactly once; modes differ only in which site draws they combine.
    Emission order is (attempt_type, trial_id, mode) ascending.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    if not modes:
        raise ValueError("at least one transmission mode is required")
    by_id = _sets_by_id(network_sets)
    for mode in modes:
        _resolve_mode(mode, by_id)

    outcomes: list[TrialOutcome] = []
    for attempt_type in ATTEMPT_TYPES:
        rng = attempt_rng(seed, attempt_type)
        for trial_id in range(n_trials):
            draws = {
                ns.id: ns.values[int(rng.integers(len(ns.values)))] for ns in network_sets
            }
            interceptor_value = interceptor.values[int(rng.integers(len(interceptor.values)))]
            for mode in modes:
                p_ic = combine_p_ic(mode, draws, interceptor_value, rule)
                outcomes.append(
                    TrialOutcome(
                        trial_id=trial_id,
                        attempt_type=attempt_type,
                        mode=mode.name,
                        p_ic=p_ic,
                        delivered=delivery_indicator(p_ic),
                    )
                )
    return outcomes


def enumerate_exact(
    mode: TransmissionMode,
    network_sets: Sequence[NetworkProbSet],
    interceptor: InterceptorProfile,
    rule: str = DEFAULT_COMBINATION_RULE,
    max_states: int = MAX_ENUMERATION_STATES,
) -> ExactResult:
    """Exact mean p_ic and delivery probability over the joint sample space.

    Every combination of one draw per participating network and one
    interceptor draw is equiprobable, so the expectation is a plain average
    over the full product space.
    """
    by_id = _sets_by_id(network_sets)
    participating = _resolve_mode(mode, by_id)
    sizes = [len(ns.values) for ns in participating] + [len(interceptor.values)]
    n_states = math.prod(sizes)
    if n_states > max_states:
        raise ValueError(
            f"enumeration space for mode {mode.name!r} has {n_states} states, "
            f"above the {max_states} limit"
        )

    combine = get_combination_rule(rule)
    total_p = 0.0
    delivered = 0
    for combo in product(*(ns.values for ns in participating), interceptor.values):
        p_ic = combine(combo[:-1], combo[-1])
        total_p += p_ic
        if p_ic >= DELIVERY_THRESHOLD:
            delivered += 1
    return ExactResult(
        expected_p_ic=total_p / n_states,
        delivery_probability=delivered / n_states,
    )


TEXTING_CSV_HEADER = "trial_id,attempt_type,mode,p_ic,delivered"


def texting_csv_rows(outcomes: Iterable[TrialOutcome]) -> list[str]:
    lines = [TEXTING_CSV_HEADER]
    for o in outcomes:
        lines.append(f"{o.trial_id},{o.attempt_type},{o.mode},{o.p_ic:.4f},{o.delivered}")
    return lines


def write_texting_csv(outcomes: Iterable[TrialOutcome], path: str | Path) -> int:
    """Write texting_results.csv; returns the number of data rows."""
    lines = texting_csv_rows(outcomes)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return len(lines) - 1
