"""Command-line entry point.

Subcommands: grid, text, cost, enumerate, pipeline. Exit codes: 0 success,
1 validation/usage error, 2 I/O error. The seed resolves as --seed flag,
then the JAMTEXTER_SEED environment variable, then the config file value.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .config import ConfigError, RunConfig, load_config
from .pipeline import (
    ensure_out_dir,
    run_grid_stage,
    run_losses_stage,
    run_pipeline,
    run_text_stage,
)
from .textsim import enumerate_exact, run_trials

SEED_ENV_VAR = "JAMTEXTER_SEED"


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser() -> _Parser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", metavar="PATH", help="JSON config file (defaults built in)")
    shared.add_argument("--seed", type=int, metavar="U64", help="RNG seed for the trial stages")
    shared.add_argument("--out-dir", metavar="PATH", help="output directory (parent must exist)")
    shared.add_argument("--trials", type=int, metavar="N", help="number of texting trials")

    parser = _Parser(prog="jamtexter", description=__doc__, parents=[shared])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("grid", parents=[shared], help="write grid_results.csv")
    sub.add_parser("text", parents=[shared], help="write texting_results.csv")
    sub.add_parser("cost", parents=[shared], help="run trials and write losses.csv")
    sub.add_parser(
        "enumerate", parents=[shared], help="print exact per-mode delivery probabilities"
    )
    sub.add_parser("pipeline", parents=[shared], help="run all stages and write the manifest")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    elif os.environ.get(SEED_ENV_VAR):
        try:
            overrides["seed"] = int(os.environ[SEED_ENV_VAR])
        except ValueError:
            raise ConfigError(
                f"{SEED_ENV_VAR}: expected an integer, got {os.environ[SEED_ENV_VAR]!r}"
            ) from None
    if args.trials is not None:
        overrides["n_trials"] = args.trials
    if args.out_dir is not None:
        overrides["out_dir"] = args.out_dir
    return replace(config, **overrides) if overrides else config


def _cmd_grid(config: RunConfig) -> int:
    out_dir = ensure_out_dir(config.out_dir)
    rows = run_grid_stage(config, out_dir)
    print(f"wrote {rows} rows to {out_dir / 'grid_results.csv'}")
    return 0


def _cmd_text(config: RunConfig) -> int:
    out_dir = ensure_out_dir(config.out_dir)
    _, rows = run_text_stage(config, out_dir)
    print(f"wrote {rows} rows to {out_dir / 'texting_results.csv'}")
    return 0


def _cmd_cost(config: RunConfig) -> int:
    out_dir = ensure_out_dir(config.out_dir)
    outcomes = run_trials(
        config.modes,
        config.network_sets,
        config.interceptor,
        config.n_trials,
        config.seed,
        config.combination_rule,
    )
    rows = run_losses_stage(config, outcomes, out_dir)
    print(f"wrote {rows} rows to {out_dir / 'losses.csv'}")
    return 0


def _cmd_enumerate(config: RunConfig) -> int:
    print(f"{'mode':<10} {'expected_p_ic':>14} {'delivery_probability':>21}")
    for mode in config.modes:
        exact = enumerate_exact(
            mode, config.network_sets, config.interceptor, config.combination_rule
        )
        print(f"{mode.name:<10} {exact.expected_p_ic:>14.4f} {exact.delivery_probability:>21.4f}")
    return 0


def _cmd_pipeline(config: RunConfig) -> int:
    manifest = run_pipeline(config)
    rows = manifest.rows
    print(
        f"pipeline done: grid={rows['grid']} texting={rows['texting']} "
        f"losses={rows['losses']} rows in {manifest.duration_ms:.0f} ms "
        f"(seed {manifest.seed}, config {manifest.config_sha256[:12]})"
    )
    return 0


_COMMANDS = {
    "grid": _cmd_grid,
    "text": _cmd_text,
    "cost": _cmd_cost,
    "enumerate": _cmd_enumerate,
    "pipeline": _cmd_pipeline,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = resolve_config(args)
        return _COMMANDS[args.command](config)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
