"""Command-line entry point: gain-sweep, kappa-sweep and mismatch subcommands.

Each subcommand reads an optional flat config file, applies ``--set key=value``
overrides, runs the matching experiment and writes a commented CSV.  The exit
status is nonzero when any result row carries an error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ExperimentConfig, load_config
from .errors import ConfigError
from .sweeps import (
    GAIN_COLUMNS,
    KAPPA_COLUMNS,
    MISMATCH_COLUMNS,
    run_gain_sweep,
    run_kappa_sweep,
    run_mismatch_study,
    write_csv,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="flat key=value file")
    parser.add_argument("--out", type=Path, required=True, help="output CSV path")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        dest="overrides",
        help="override a config key (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinchsim",
        description="Pinching-antenna multiport simulator and beamforming sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("gain-sweep", "channel gain vs number of PAs for the selected PA models"),
        ("kappa-sweep", "coupler amplitude/phase curves over the coupling coefficient"),
        ("mismatch", "general vs matched end-to-end gain under load mismatches"),
    ):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def _write(path: Path, columns, rows, cfg: ExperimentConfig, title: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        write_csv(stream, columns, rows, [title, f"config: {cfg.header_line()}"])


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides)
    except (ConfigError, OSError) as err:
        print(f"pinchsim: {err}", file=sys.stderr)
        return 2

    if args.command == "gain-sweep":
        rows = run_gain_sweep(cfg)
        _write(args.out, GAIN_COLUMNS, rows, cfg, "pinchsim gain-sweep")
    elif args.command == "kappa-sweep":
        rows = run_kappa_sweep(cfg.varphi, cfg.kappa_grid)
        _write(args.out, KAPPA_COLUMNS, rows, cfg, "pinchsim kappa-sweep")
    else:
        rows = run_mismatch_study(cfg)
        _write(args.out, MISMATCH_COLUMNS, rows, cfg, "pinchsim mismatch")

    failed = [r for r in rows if r.get("error")]
    for row in failed:
        print(f"pinchsim: row error: {row['error']}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
