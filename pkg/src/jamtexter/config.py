"""Run configuration: built-in default parameters, JSON loading, validation.

The zero-config run reproduces the reference experiment: a 15 km grid with
five transmitters and five interceptors, four cellular generations, five
untrusted networks against one interceptor profile, 1,000 trials, and the
default cost table and coefficients. A config file only needs the fields it
overrides; unknown keys are rejected outright to catch typos.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

from .econ import Coefficients, CostTable
from .jamgrid import Scenario, Site
from .propagation import DEFAULT_NOISE_FIGURE_DB, GenerationParams, Position
from .textsim import (
    COMBINATION_RULES,
    DEFAULT_COMBINATION_RULE,
    InterceptorProfile,
    NetworkProbSet,
    TransmissionMode,
)

DEFAULT_N_TRIALS = 1000
DEFAULT_SEED = 0
DEFAULT_OUT_DIR = "out"

# Station coordinates (km). Duplicates (A=B, D=E) are intentional and kept
# verbatim; the sweep's tie-break handles them deterministically.
DEFAULT_TRANSMITTERS = (
    Site("A", Position(4.0, 4.0)),
    Site("B", Position(4.0, 4.0)),
    Site("C", Position(8.0, 8.0)),
    Site("D", Position(14.0, 14.0)),
    Site("E", Position(14.0, 14.0)),
)
DEFAULT_INTERCEPTORS = (
    Site("A", Position(4.1, 14.1)),
    Site("B", Position(4.1, 4.1)),
    Site("C", Position(8.1, 8.1)),
    Site("D", Position(14.1, 4.1)),
    Site("E", Position(14.1, 14.1)),
)

# Cellular generation parameters. The 5G bandwidth of 30 GHz is kept as
# published even though it is physically implausible; override it in a
# config file if a realistic value is wanted, e.g.
#   {"scenario": {"generations": [..., {"name": "5G", "frequency_hz": 26e9,
#    "bandwidth_hz": 400e6, "tx_power_dbm": 40}]}}
DEFAULT_GENERATIONS = (
    GenerationParams("2G", frequency_hz=850e6, bandwidth_hz=6.8e6, tx_power_dbm=40.0),
    GenerationParams("3G", frequency_hz=1.9e9, bandwidth_hz=25e6, tx_power_dbm=40.0),
    GenerationParams("4G", frequency_hz=3.5e9, bandwidth_hz=100e6, tx_power_dbm=40.0),
    GenerationParams("5G", frequency_hz=26e9, bandwidth_hz=30e9, tx_power_dbm=40.0),
)

DEFAULT_NETWORK_SETS = (
    NetworkProbSet("w1", (0.1, 0.2, 0.3, 0.4, 0.45)),
    NetworkProbSet("w2", (0.1, 0.2, 0.3, 0.45, 0.45)),
    NetworkProbSet("w3", (0.2, 0.2, 0.3, 0.45, 0.45)),
    NetworkProbSet("w4", (0.2, 0.2, 0.3, 0.45, 0.45)),
    NetworkProbSet("w5", (0.2, 0.2, 0.3, 0.45, 0.45)),
)
DEFAULT_INTERCEPTOR_PROFILE = InterceptorProfile("I1", (0.1, 0.2, 0.3, 0.4))

DEFAULT_MODES = (
    TransmissionMode("baseline", ("w1",)),
    TransmissionMode("partial", ("w1", "w2", "w3")),
    TransmissionMode("full", ("w1", "w2", "w3", "w4", "w5")),
)

DEFAULT_COEFFICIENTS = Coefficients(
    alpha={"full": 1.0, "partial": 2.0, "baseline": 3.0},
    beta={"private": 2.0, "commercial": 4.0, "government": 6.0, "military": 8.0},
)

DEFAULT_COST_TABLE = CostTable(
    breakpoints=(
        (0.1, 10.0),
        (0.2, 7.2),
        (0.3, 5.1),
        (0.4, 2.8),
        (0.5, 1.1),
        (0.6, 0.1),
        (0.7, 0.1),
        (0.8, 0.1),
        (0.9, 0.1),
    )
)


class ConfigError(ValueError):
    """A configuration file failed to parse or validate."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a pipeline run needs, serializable to/from JSON."""

    scenario: Scenario = field(
        default_factory=lambda: Scenario(
            transmitters=DEFAULT_TRANSMITTERS,
            interceptors=DEFAULT_INTERCEPTORS,
            generations=DEFAULT_GENERATIONS,
        )
    )
    network_sets: tuple[NetworkProbSet, ...] = DEFAULT_NETWORK_SETS
    interceptor: InterceptorProfile = DEFAULT_INTERCEPTOR_PROFILE
    modes: tuple[TransmissionMode, ...] = DEFAULT_MODES
    coefficients: Coefficients = DEFAULT_COEFFICIENTS
    cost_table: CostTable = DEFAULT_COST_TABLE
    n_trials: int = DEFAULT_N_TRIALS
    seed: int = DEFAULT_SEED
    out_dir: str = DEFAULT_OUT_DIR
    combination_rule: str = DEFAULT_COMBINATION_RULE

    def __post_init__(self) -> None:
        if self.n_trials < 1:
            raise ConfigError(f"n_trials: must be >= 1, got {self.n_trials}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed: must be an unsigned 64-bit integer, got {self.seed}")
        if self.combination_rule not in COMBINATION_RULES:
            raise ConfigError(
                f"combination_rule: unknown rule {self.combination_rule!r}, "
                f"known: {sorted(COMBINATION_RULES)}"
            )
        known = {ns.id for ns in self.network_sets}
        for mode in self.modes:
            missing = [n for n in mode.networks if n not in known]
            if missing:
                raise ConfigError(f"modes[{mode.name}]: unknown network sets {missing}")
            if mode.name not in self.coefficients.alpha:
                raise ConfigError(f"coefficients.alpha: no entry for mode {mode.name!r}")


def default_config(**overrides: Any) -> RunConfig:
    return replace(RunConfig(), **overrides) if overrides else RunConfig()


# --- serialization -----------------------------------------------------------

def config_to_dict(config: RunConfig) -> dict[str, Any]:
    return {
        "scenario": {
            "grid_side_km": config.scenario.grid_side_km,
            "transmitters": [
                {"id": s.id, "x_km": s.position.x_km, "y_km": s.position.y_km}
                for s in config.scenario.transmitters
            ],
            "interceptors": [
                {"id": s.id, "x_km": s.position.x_km, "y_km": s.position.y_km}
                for s in config.scenario.interceptors
            ],
            "generations": [
                {
                    "name": g.name,
                    "frequency_hz": g.frequency_hz,
                    "bandwidth_hz": g.bandwidth_hz,
                    "tx_power_dbm": g.tx_power_dbm,
                    "noise_figure_db": g.noise_figure_db,
                }
                for g in config.scenario.generations
            ],
        },
        "network_sets": [
            {"id": ns.id, "values": list(ns.values)} for ns in config.network_sets
        ],
        "interceptor": {
            "id": config.interceptor.id,
            "values": list(config.interceptor.values),
        },
        "modes": [{"name": m.name, "networks": list(m.networks)} for m in config.modes],
        "coefficients": {
            "alpha": dict(config.coefficients.alpha),
            "beta": dict(config.coefficients.beta),
        },
        "cost_table": [[p, c] for p, c in config.cost_table.breakpoints],
        "n_trials": config.n_trials,
        "seed": config.seed,
        "out_dir": config.out_dir,
        "combination_rule": config.combination_rule,
    }


def dumps_config(config: RunConfig) -> str:
    """Canonical JSON rendering (stable key order, compact separators)."""
    return json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))


def config_sha256(config: RunConfig) -> str:
    """Digest of the experiment-defining fields.

    out_dir is excluded: two runs of one experiment into different
    directories share the same identity.
    """
    payload = config_to_dict(config)
    del payload["out_dir"]
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# --- deserialization ---------------------------------------------------------

def _require_keys(obj: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")


def _number(obj: Mapping[str, Any], key: str, where: str) -> float:
    value = obj.get(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{where}.{key}: expected a number, got {value!r}")
    return float(value)


def _string(obj: Mapping[str, Any], key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise ConfigError(f"{where}.{key}: expected a string, got {value!r}")
    return value


def _site_list(raw: Any, where: str) -> tuple[Site, ...]:
    if not isinstance(raw, list):
        raise ConfigError(f"{where}: expected a list")
    sites = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ConfigError(f"{where}[{i}]: expected an object")
        _require_keys(entry, {"id", "x_km", "y_km"}, f"{where}[{i}]")
        sites.append(
            Site(
                id=_string(entry, "id", f"{where}[{i}]"),
                position=Position(
                    x_km=_number(entry, "x_km", f"{where}[{i}]"),
                    y_km=_number(entry, "y_km", f"{where}[{i}]"),
                ),
            )
        )
    return tuple(sites)


def _scenario_from_dict(raw: Mapping[str, Any]) -> Scenario:
    _require_keys(
        raw, {"grid_side_km", "transmitters", "interceptors", "generations"}, "scenario"
    )
    defaults = RunConfig().scenario
    grid_side = (
        _number(raw, "grid_side_km", "scenario")
        if "grid_side_km" in raw
        else defaults.grid_side_km
    )
    transmitters = (
        _site_list(raw["transmitters"], "scenario.transmitters")
        if "transmitters" in raw
        else defaults.transmitters
    )
    interceptors = (
        _site_list(raw["interceptors"], "scenario.interceptors")
        if "interceptors" in raw
        else defaults.interceptors
    )
    if "generations" in raw:
        if not isinstance(raw["generations"], list):
            raise ConfigError("scenario.generations: expected a list")
        generations = []
        for i, entry in enumerate(raw["generations"]):
            where = f"scenario.generations[{i}]"
            if not isinstance(entry, dict):
                raise ConfigError(f"{where}: expected an object")
            _require_keys(
                entry,
                {"name", "frequency_hz", "bandwidth_hz", "tx_power_dbm", "noise_figure_db"},
                where,
            )
            generations.append(
                GenerationParams(
                    name=_string(entry, "name", where),
                    frequency_hz=_number(entry, "frequency_hz", where),
                    bandwidth_hz=_number(entry, "bandwidth_hz", where),
                    tx_power_dbm=_number(entry, "tx_power_dbm", where),
                    noise_figure_db=(
                        _number(entry, "noise_figure_db", where)
                        if "noise_figure_db" in entry
                        else DEFAULT_NOISE_FIGURE_DB
                    ),
                )
            )
        generations = tuple(generations)
    else:
        generations = defaults.generations
    try:
        return Scenario(
            transmitters=transmitters,
            interceptors=interceptors,
            generations=generations,
            grid_side_km=grid_side,
        )
    except ValueError as exc:
        raise ConfigError(f"scenario: {exc}") from exc


def _prob_set(raw: Any, where: str) -> tuple[str, tuple[float, ...]]:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    _require_keys(raw, {"id", "values"}, where)
    set_id = _string(raw, "id", where)
    values = raw.get("values")
    if not isinstance(values, list):
        raise ConfigError(f"{where}.values: expected a list")
    out = []
    for i, v in enumerate(values):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ConfigError(f"{where}.values[{i}]: expected a number, got {v!r}")
        out.append(float(v))
    return set_id, tuple(out)


def _coeff_map(raw: Any, where: str) -> dict[str, float]:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    return {key: _number(raw, key, where) for key in raw}


def config_from_dict(raw: Mapping[str, Any]) -> RunConfig:
    """Build a RunConfig from parsed JSON; missing fields take the defaults."""
    if not isinstance(raw, Mapping):
        raise ConfigError("config root: expected a JSON object")
    allowed = {
        "scenario",
        "network_sets",
        "interceptor",
        "modes",
        "coefficients",
        "cost_table",
        "n_trials",
        "seed",
        "out_dir",
        "combination_rule",
    }
    _require_keys(raw, allowed, "config root")
    kwargs: dict[str, Any] = {}

    if "scenario" in raw:
        kwargs["scenario"] = _scenario_from_dict(raw["scenario"])
    if "network_sets" in raw:
        if not isinstance(raw["network_sets"], list):
            raise ConfigError("network_sets: expected a list")
        try:
            kwargs["network_sets"] = tuple(
                NetworkProbSet(*_prob_set(entry, f"network_sets[{i}]"))
                for i, entry in enumerate(raw["network_sets"])
            )
        except ValueError as exc:
            raise ConfigError(f"network_sets: {exc}") from exc
    if "interceptor" in raw:
        try:
            kwargs["interceptor"] = InterceptorProfile(*_prob_set(raw["interceptor"], "interceptor"))
        except ValueError as exc:
            raise ConfigError(f"interceptor: {exc}") from exc
    if "modes" in raw:
        if not isinstance(raw["modes"], list):
            raise ConfigError("modes: expected a list")
        modes = []
        for i, entry in enumerate(raw["modes"]):
            where = f"modes[{i}]"
            if not isinstance(entry, dict):
                raise ConfigError(f"{where}: expected an object")
            _require_keys(entry, {"name", "networks"}, where)
            networks = entry.get("networks")
            if not isinstance(networks, list) or not all(isinstance(n, str) for n in networks):
                raise ConfigError(f"{where}.networks: expected a list of network ids")
            try:
                modes.append(TransmissionMode(_string(entry, "name", where), tuple(networks)))
            except ValueError as exc:
                raise ConfigError(f"{where}: {exc}") from exc
        kwargs["modes"] = tuple(modes)
    if "coefficients" in raw:
        if not isinstance(raw["coefficients"], dict):
            raise ConfigError("coefficients: expected an object")
        _require_keys(raw["coefficients"], {"alpha", "beta"}, "coefficients")
        defaults = DEFAULT_COEFFICIENTS
        alpha = (
            _coeff_map(raw["coefficients"]["alpha"], "coefficients.alpha")
            if "alpha" in raw["coefficients"]
            else dict(defaults.alpha)
        )
        beta = (
            _coeff_map(raw["coefficients"]["beta"], "coefficients.beta")
            if "beta" in raw["coefficients"]
            else dict(defaults.beta)
        )
        try:
            kwargs["coefficients"] = Coefficients(alpha=alpha, beta=beta)
        except ValueError as exc:
            raise ConfigError(f"coefficients: {exc}") from exc
    if "cost_table" in raw:
        if not isinstance(raw["cost_table"], list):
            raise ConfigError("cost_table: expected a list of [probability, cost] pairs")
        pairs = []
        for i, entry in enumerate(raw["cost_table"]):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ConfigError(f"cost_table[{i}]: expected a [probability, cost] pair")
            p, c = entry
            if any(not isinstance(v, (int, float)) or isinstance(v, bool) for v in entry):
                raise ConfigError(f"cost_table[{i}]: expected numbers, got {entry!r}")
            pairs.append((float(p), float(c)))
        try:
            kwargs["cost_table"] = CostTable(breakpoints=tuple(pairs))
        except ValueError as exc:
            raise ConfigError(f"cost_table: {exc}") from exc
    if "n_trials" in raw:
        n_trials = raw["n_trials"]
        if not isinstance(n_trials, int) or isinstance(n_trials, bool):
            raise ConfigError(f"n_trials: expected an integer, got {n_trials!r}")
        kwargs["n_trials"] = n_trials
    if "seed" in raw:
        seed = raw["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError(f"seed: expected an integer, got {seed!r}")
        kwargs["seed"] = seed
    if "out_dir" in raw:
        kwargs["out_dir"] = _string(raw, "out_dir", "config root")
    if "combination_rule" in raw:
        kwargs["combination_rule"] = _string(raw, "combination_rule", "config root")

    return RunConfig(**kwargs)


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a JSON config file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(raw)
