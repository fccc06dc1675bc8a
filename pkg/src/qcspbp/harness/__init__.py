"""Experiment harness: configs, seeded trial runner, CSV/SVG output and CLI."""
from .config import ExperimentConfig, load_config, parse_config, preset, PRESETS
from .runner import TrialRecord, RunOutput, run_experiment, run_trial, read_csv, write_csv
from .plot import emit_plot
from .checks import run_property_suite

__all__ = [
    "ExperimentConfig", "load_config", "parse_config", "preset", "PRESETS",
    "TrialRecord", "RunOutput", "run_experiment", "run_trial", "read_csv", "write_csv",
    "emit_plot", "run_property_suite",
]
