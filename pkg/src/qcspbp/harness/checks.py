"""Property suite: invariant checks on fresh random instances."""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

import numpy as np

from ..analysis import error_bound_check
from ..models import LowRank, Signal, Sparse, project_lowrank, project_sparse
from ..pbp import back_project, nearest_point_gap, support_bound
from ..quantize import dithered_mean_exact, draw_dither, make_map, observe, quantize
from ..seeding import derive_seed, rng
from ..sensing import build_operator, build_partial_dct


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name:<28} {self.detail}"


@dataclass
class PropertyReport:
    seed: int
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> List[str]:
        return [r.line() for r in self.results]


def _quantizer_bracket(seed, quantizer):
    g = rng(seed)
    t = g.uniform(-50, 50, 10_000)
    d = g.uniform(0.01, 5, 10_000)
    q = np.array([quantizer(ti, di) for ti, di in zip(t, d)])
    bad = int(np.sum(~((t - d < q) & (q <= t))))
    return bad == 0, f"violations={bad}/10000"


def _unbiased_mc(seed, quantizer):
    g = rng(seed)
    worst = 0.0
    for i in range(20):
        t, d = g.uniform(-10, 10), g.uniform(0.1, 4)
        xi = draw_dither(1_000_000, d, derive_seed(seed, i))
        dev = abs(float(np.mean(quantizer(t + xi, d))) - t) / d
        worst = max(worst, dev)
    return worst <= 0.002, f"max |mean - t|/delta = {worst:.2e} (tol 2e-3, 20 pairs x 1e6 draws)"


def _unbiased_exact(seed, quantizer):
    g = rng(seed)
    bad = 0
    for _ in range(20):
        lam = Fraction(int(g.integers(-10_000, 10_000)), int(g.integers(1, 997)))
        delta = Fraction(int(g.integers(1, 50)), int(g.integers(1, 50)))
        bad += dithered_mean_exact(lam * delta, delta) != lam * delta
    return bad == 0, f"exact identity failures={bad}/20"


def _adjoint(seed, quantizer):
    worst = 0.0
    for j, kind in enumerate(("gaussian", "bernoulli", "partial-dct")):
        op = build_operator(kind, 37, 64, derive_seed(seed, j))
        g = rng(derive_seed(seed, j, 1))
        for _ in range(50):
            x, y = g.standard_normal(64), g.standard_normal(37)
            gap = abs(op.apply(x) @ y - x @ op.apply_adjoint(y)) / (np.linalg.norm(x) * np.linalg.norm(y))
            worst = max(worst, gap)
    return worst <= 1e-9, f"max relative adjoint gap = {worst:.2e} (tol 1e-9)"


def _dct_isometry(seed, quantizer):
    op = build_partial_dct(64, 64, seed)
    g = rng(derive_seed(seed, 1))
    worst = 0.0
    for _ in range(100):
        x = g.standard_normal(64)
        worst = max(worst, abs(np.sum(op.apply(x) ** 2) / 64 - x @ x))
    return worst <= 1e-10, f"max |(1/n)||Phi x||^2 - ||x||^2| = {worst:.2e} (tol 1e-10)"


def _sparse_oracle(seed, quantizer):
    g = rng(seed)
    worst = 0.0
    for _ in range(200):
        n = int(g.integers(2, 11))
        k = int(g.integers(1, n + 1))
        z = g.standard_normal(n)
        best = min(np.linalg.norm(np.delete(z, list(s))) for s in itertools.combinations(range(n), k))
        worst = max(worst, abs(np.linalg.norm(z - project_sparse(z, k)) - best))
    return worst <= 1e-12, f"max distance gap to exhaustive minimizer = {worst:.1e}"


def _lowrank_oracle(seed, quantizer):
    g = rng(seed)
    bad = 0
    for _ in range(20):
        n1, n2 = int(g.integers(2, 9)), int(g.integers(2, 9))
        r = int(g.integers(1, min(n1, n2) + 1))
        z = g.standard_normal((n1, n2))
        err = np.linalg.norm(z - project_lowrank(Signal.from_matrix(z), r).as_matrix())
        for _ in range(200):
            cand = g.standard_normal((n1, r)) @ g.standard_normal((n2, r)).T
            bad += err > np.linalg.norm(z - cand) + 1e-12
    return bad == 0, f"random rank-r candidates beating SVD truncation = {bad}/4000"


def _pbp_instances(seed, model, count, m, matrix):
    for i in range(count):
        s = derive_seed(seed, i)
        op = build_operator(matrix, m, model.n, derive_seed(s, 1))
        qmap = make_map(op, 1.0, dithered=True, seed=derive_seed(s, 2))
        x = model.generate(derive_seed(s, 3))
        y = observe(qmap, x.data)
        a = back_project(op, y)
        yield qmap, x, y, a, model.project(a)


def _support_bound(seed, quantizer):
    bad = 0
    for qmap, x, _, a, xhat in _pbp_instances(seed, Sparse(128, 4), 50, 64, "gaussian"):
        lhs, rhs = support_bound(x, xhat, a)
        bad += lhs > rhs * (1 + 1e-12) + 1e-12
    return bad == 0, f"||x - xhat|| > 2||x - a_T|| on {bad}/50 instances"


def _nearest_point(seed, quantizer):
    bad = 0
    for j, model in enumerate((Sparse(128, 4), LowRank(12, 12, 2))):
        for qmap, x, _, a, xhat in _pbp_instances(derive_seed(seed, j), model, 25, 64, "partial-dct"):
            proj, dist = nearest_point_gap(x, xhat, a)
            bad += proj > dist * (1 + 1e-12) + 1e-12
    return bad == 0, f"||xhat - a|| > ||x - a|| on {bad}/50 instances"


def _error_bound(seed, quantizer):
    worst = 0.0
    ok = True
    for i, (qmap, x, y, _, xhat) in enumerate(_pbp_instances(seed, Sparse(128, 4), 5, 96, "gaussian")):
        chk = error_bound_check(qmap, x, xhat, y, Sparse(128, 4), 50, derive_seed(seed, 100 + i))
        ok &= chk.holds
        worst = max(worst, chk.error / chk.bound)
    return ok, f"max ||x - xhat|| / (4 eps + 2 nu) = {worst:.3f} over 5 instances"


CHECKS = (
    ("quantizer_bracket", _quantizer_bracket),
    ("dither_unbiased_monte_carlo", _unbiased_mc),
    ("dither_unbiased_exact", _unbiased_exact),
    ("adjoint_identity", _adjoint),
    ("partial_dct_isometry", _dct_isometry),
    ("hard_threshold_oracle", _sparse_oracle),
    ("svd_truncation_oracle", _lowrank_oracle),
    ("support_bound", _support_bound),
    ("nearest_point", _nearest_point),
    ("error_bound_sampled", _error_bound),
)


def run_property_suite(seed: int = 0, quantizer: Callable = quantize, out=sys.stdout) -> PropertyReport:
    """Run every invariant check, printing one line per check to ``out``.

    ``quantizer(t, delta)`` replaces the uniform quantizer in the
    quantizer-level checks, which lets a deliberately broken quantizer be
    fed through the suite.
    """
    results = []
    for i, (name, fn) in enumerate(CHECKS):
        passed, detail = fn(derive_seed(seed, name), quantizer)
        res = CheckResult(name, bool(passed), detail)
        results.append(res)
        if out is not None:
            print(res.line(), file=out, flush=True)
    return PropertyReport(seed, results)
