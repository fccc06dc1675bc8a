"""Seeded trial runner and CSV output."""
from __future__ import annotations

import csv
import dataclasses
import datetime as _dt
import io
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from ..analysis import SweepResult, aggregate_trials
from ..models import Sparse
from ..pbp import back_project, nearest_point_gap, reconstruction_error, support_bound
from ..quantize import make_map, observe
from ..seeding import derive_seed
from ..sensing import build_operator
from .config import ExperimentConfig

CSV_HEADER = ("experiment", "matrix", "model", "n", "k_or_r", "m", "delta", "dither", "trial", "seed", "error")

# sub-stream tags under a trial (or grid-point) seed
_OP, _DITHER, _SIGNAL = 1, 2, 3


@dataclass(frozen=True)
class TrialRecord:
    experiment: str
    matrix: str
    model: str
    n: int
    k_or_r: int
    m: int
    delta: float
    dither: bool
    trial: int
    seed: int
    error: float
    checks: Dict[str, bool] = field(default_factory=dict, compare=False)

    def csv_row(self) -> List[str]:
        return [self.experiment, self.matrix, self.model, str(self.n), str(self.k_or_r), str(self.m),
                repr(float(self.delta)), "1" if self.dither else "0", str(self.trial), str(self.seed),
                repr(float(self.error))]


def trial_seed(cfg: ExperimentConfig, m: int, delta: float, dither: bool, trial: int) -> int:
    """Seed of one trial: a pure function of (master, experiment, m, delta, dither, trial)."""
    return derive_seed(cfg.seed, cfg.experiment, int(m), float(delta), bool(dither), int(trial))


def point_seed(cfg: ExperimentConfig, m: int, delta: float, dither: bool) -> int:
    """Seed shared by all trials of a grid point when the matrix is held fixed."""
    return derive_seed(cfg.seed, cfg.experiment, int(m), float(delta), bool(dither))


def draw_trial(cfg: ExperimentConfig, m: int, delta: float, dither: bool, trial: int):
    """Quantized map and signal of one trial.

    Operator and dither come from the trial seed, or from the grid-point seed
    when ``cfg.fixed_matrix`` is set; the signal always comes from the trial seed.
    """
    seed = trial_seed(cfg, m, delta, dither, trial)
    shared = point_seed(cfg, m, delta, dither) if cfg.fixed_matrix else seed
    model = cfg.signal_model()
    op = build_operator(cfg.matrix, m, model.n, derive_seed(shared, _OP))
    qmap = make_map(op, delta, dithered=dither, seed=derive_seed(shared, _DITHER))
    return seed, qmap, model.generate(derive_seed(seed, _SIGNAL))


def run_trial(cfg: ExperimentConfig, m: int, delta: float, dither: bool, trial: int) -> TrialRecord:
    """Draw operator, dither and signal, observe, reconstruct by PBP and score."""
    seed, qmap, x = draw_trial(cfg, m, delta, dither, trial)
    op, model = qmap.op, cfg.signal_model()
    y = observe(qmap, x.data)
    a = back_project(op, y)
    xhat = model.project(a)
    err = reconstruction_error(x, xhat)
    proj, dist = nearest_point_gap(x, xhat, a)
    checks = {"nearest_point": proj <= dist * (1 + 1e-12) + 1e-12}
    if isinstance(model, Sparse):
        lhs, rhs = support_bound(x, xhat, a)
        checks["support_bound"] = lhs <= rhs * (1 + 1e-12) + 1e-12
    return TrialRecord(
        experiment=cfg.experiment, matrix=cfg.matrix, model=model.name, n=model.n, k_or_r=model.level,
        m=int(m), delta=float(delta), dither=bool(dither), trial=int(trial), seed=seed, error=err,
        checks=checks,
    )


def _run_task(cfg: ExperimentConfig, task) -> TrialRecord:
    return run_trial(cfg, *task)


def run_trials(cfg: ExperimentConfig, jobs: int = 1) -> List[TrialRecord]:
    cfg.validate()
    tasks = [(m, d, t, i) for (m, d, t) in cfg.grid_points() for i in range(cfg.trials)]
    if jobs <= 1:
        records = [_run_task(cfg, task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (8 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(partial(_run_task, cfg), tasks, chunksize=chunk))
    return sorted(records, key=lambda r: (r.m, r.delta, r.dither, r.trial))


def render_csv(cfg: ExperimentConfig, records: Sequence[TrialRecord], sweep: SweepResult,
               timestamp: bool = True) -> str:
    buf = io.StringIO()
    if timestamp:
        now = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# generated {now}\n")
    fit_range = "all m" if cfg.fit_min_m is None else f"m >= {cfg.fit_min_m}"
    buf.write(f"# config {cfg.label}: experiment={cfg.experiment} matrix={cfg.matrix} model={cfg.model} "
              f"trials={cfg.trials} master_seed={cfg.seed} fixed_matrix={int(cfg.fixed_matrix)}\n")
    buf.write(f"# stddev convention: sample (n - 1); fit range: {fit_range}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())
    for line in summary_lines(sweep):
        buf.write(f"# {line}\n")
    return buf.getvalue()


def summary_lines(sweep: SweepResult) -> List[str]:
    lines = ["summary m,delta,dither,mean,median,std,count"]
    for p in sweep.grid:
        s = sweep.stats[p]
        lines.append(f"point {p[0]},{p[1]!r},{int(p[2])},{s.mean!r},{s.median!r},{s.std!r},{s.count}")
    for (delta, dither), fit in sorted(sweep.fits.items()):
        lines.append(f"fit vs m: delta={delta!r} dither={int(dither)} "
                     f"exponent={fit.exponent:.4f} +/- {fit.residual:.4f} (rms residual)")
    for (m, dither), fit in sorted(sweep.delta_fits.items()):
        lines.append(f"fit vs 1+delta: m={m} dither={int(dither)} "
                     f"exponent={fit.exponent:.4f} +/- {fit.residual:.4f} (rms residual)")
    for name, (checked, bad) in sweep.checks.items():
        lines.append(f"check {name}: {checked - bad}/{checked} trials hold")
    return lines


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, cfg: ExperimentConfig, records: Sequence[TrialRecord], sweep: SweepResult,
              timestamp: bool = True) -> Path:
    path = Path(path)
    write_atomic(path, render_csv(cfg, records, sweep, timestamp))
    return path


def read_csv(path) -> List[TrialRecord]:
    """Load trial rows from a CSV written by :func:`write_csv` (comment lines skipped)."""
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"{path}: unexpected CSV header {reader.fieldnames}")
    return [
        TrialRecord(
            experiment=row["experiment"], matrix=row["matrix"], model=row["model"], n=int(row["n"]),
            k_or_r=int(row["k_or_r"]), m=int(row["m"]), delta=float(row["delta"]),
            dither=row["dither"] == "1", trial=int(row["trial"]), seed=int(row["seed"]),
            error=float(row["error"]),
        )
        for row in reader
    ]


@dataclass
class RunOutput:
    config: ExperimentConfig
    sweep: SweepResult
    records: List[TrialRecord]
    csv_path: Optional[Path] = None
    svg_path: Optional[Path] = None


def run_experiment(cfg: ExperimentConfig, out_dir=None, jobs: int = 1, timestamp: bool = True,
                   plot: bool = False) -> RunOutput:
    """Run every trial of ``cfg``, aggregate, and optionally write CSV and SVG.

    Output files are named after ``cfg.label`` inside ``out_dir``; nothing is
    written when ``out_dir`` is None.
    """
    records = run_trials(cfg, jobs=jobs)
    sweep = aggregate_trials(records, fit_min_m=cfg.fit_min_m)
    out = RunOutput(cfg, sweep, records)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out.csv_path = write_csv(out_dir / f"{cfg.label}.csv", cfg, records, sweep, timestamp)
        if plot:
            from .plot import emit_plot
            out.svg_path = emit_plot(sweep, out_dir / f"{cfg.label}.svg")
    return out


def with_overrides(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    kw = {k: v for k, v in kw.items() if v is not None}
    return dataclasses.replace(cfg, **kw).validate() if kw else cfg.validate()
