"""Command-line entry point: ``qcspbp run|check|plot``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..analysis import aggregate_trials
from ..errors import ConfigError
from .checks import run_property_suite
from .config import load_config, preset
from .plot import emit_plot
from .runner import read_csv, run_experiment, summary_lines, with_overrides

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_CHECKS = 0, 1, 2, 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcspbp", description="Quantized CS / PBP experiment harness")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment from a config file or preset")
    run.add_argument("config", nargs="?", help="flat key = value config file")
    run.add_argument("--preset", choices=["exp-a", "exp-b", "exp-c", "exp-d"])
    run.add_argument("--seed", type=int, help="master seed (overrides config)")
    run.add_argument("--trials", type=int, help="trials per grid point (overrides config)")
    run.add_argument("--out-dir", default="results", help="directory for CSV/SVG output")
    run.add_argument("--no-timestamp", action="store_true", help="omit the timestamp line from the CSV")
    run.add_argument("--fixed-matrix", action="store_true",
                     help="share one operator and dither across the trials of each grid point")
    run.add_argument("--jobs", type=int, default=1, help="worker processes")
    run.add_argument("--plot", action="store_true", help="also write an SVG plot")

    check = sub.add_parser("check", help="run the property suite")
    check.add_argument("--seed", type=int, default=0)

    plot = sub.add_parser("plot", help="plot a CSV written by 'run'")
    plot.add_argument("csv")
    plot.add_argument("out")
    return parser


def _cmd_run(args) -> int:
    if (args.config is None) == (args.preset is None):
        raise ConfigError("give exactly one of a config file or --preset")
    if args.jobs < 1:
        raise ConfigError("--jobs must be positive")
    cfg = preset(args.preset) if args.preset else load_config(args.config)
    cfg = with_overrides(cfg, seed=args.seed, trials=args.trials,
                         fixed_matrix=True if args.fixed_matrix else None)
    out = run_experiment(cfg, out_dir=args.out_dir, jobs=args.jobs, timestamp=not args.no_timestamp,
                         plot=args.plot)
    print(f"{cfg.label}: {len(out.records)} trials -> {out.csv_path}")
    if out.svg_path:
        print(f"plot -> {out.svg_path}")
    for line in summary_lines(out.sweep):
        if not line.startswith(("point", "summary")):
            print(line)
    return EXIT_OK


def _cmd_check(args) -> int:
    report = run_property_suite(args.seed)
    print("all checks passed" if report.passed else "property suite FAILED")
    return EXIT_OK if report.passed else EXIT_CHECKS


def _cmd_plot(args) -> int:
    records = read_csv(args.csv)
    if not records:
        raise ConfigError(f"{args.csv} has no data rows")
    path = emit_plot(aggregate_trials(records), args.out)
    print(f"plot -> {path}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "check": _cmd_check, "plot": _cmd_plot}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - mapped to the runtime-failure exit code
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
