import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from qcspbp.errors import ModelError
from qcspbp.models import (LowRank, Signal, Sparse, gen_lowrank, gen_sparse, mat_to_vec,
                           project_lowrank, project_sparse, vec_to_mat)


def brute_force_sparse(z, k):
    """Nearest k-sparse vector by enumerating every support."""
    best, best_dist = None, np.inf
    for supp in itertools.combinations(range(z.size), k):
        u = np.zeros_like(z)
        u[list(supp)] = z[list(supp)]
        d = np.linalg.norm(z - u)
        if d < best_dist:
            best, best_dist = u, d
    return best, best_dist


def test_project_sparse_examples():
    assert np.array_equal(project_sparse([3, -5, 1, 0], 2), [3, -5, 0, 0])
    assert np.array_equal(project_sparse([1, 1, 1], 2), [1, 1, 0])


def test_project_sparse_tie_break_lowest_index():
    assert np.array_equal(project_sparse([0, -2, 2, 2], 2), [0, -2, 2, 0])


@pytest.mark.parametrize("k", [0, 4])
def test_project_sparse_bad_k(k):
    with pytest.raises(ModelError):
        project_sparse(np.ones(3), k)


def test_project_sparse_matches_exhaustive(gen):
    for _ in range(1000):
        n = int(gen.integers(1, 13))
        k = int(gen.integers(1, n + 1))
        z = gen.standard_normal(n)
        _, best = brute_force_sparse(z, k)
        assert abs(np.linalg.norm(z - project_sparse(z, k)) - best) <= 1e-12


def test_project_sparse_n10_k3(gen):
    for _ in range(1000):
        z = gen.standard_normal(10)
        _, best = brute_force_sparse(z, 3)
        assert abs(np.linalg.norm(z - project_sparse(z, 3)) - best) <= 1e-12


@settings(max_examples=100)
@given(z=arrays(np.float64, st.integers(1, 30), elements=st.floats(-1e6, 1e6)), data=st.data())
def test_project_sparse_idempotent_and_sparse(z, data):
    k = data.draw(st.integers(1, z.size))
    p = project_sparse(z, k)
    assert np.count_nonzero(p) <= k
    assert np.array_equal(project_sparse(p, k), p)


@settings(max_examples=50)
@given(z=arrays(np.float64, 12, elements=st.floats(-100, 100)), seed=st.integers(0, 2**32))
def test_project_sparse_beats_model_samples(z, seed):
    g = np.random.default_rng(seed)
    d = np.linalg.norm(z - project_sparse(z, 3))
    for _ in range(20):
        u = np.zeros(12)
        u[g.choice(12, 3, replace=False)] = g.standard_normal(3) * 10
        assert d <= np.linalg.norm(z - u) + 1e-9


def test_project_lowrank_diag():
    out = project_lowrank(Signal.from_matrix(np.diag([3.0, 2.0, 1.0])), 2)
    assert np.allclose(out.as_matrix(), np.diag([3.0, 2.0, 0.0]), atol=1e-12)


def test_project_lowrank_fixed_point(gen):
    u, v = gen.standard_normal(5), gen.standard_normal(4)
    z = Signal.from_matrix(np.outer(u, v))
    assert np.allclose(project_lowrank(z, 2).data, z.data, atol=1e-10)


def test_project_lowrank_dominates_random_candidates(gen):
    # 6x6 instance plus 50 instances of size <= 8x8, 200 random B C^T candidates each
    shapes = [(6, 6, 2)] + [(int(gen.integers(2, 9)), int(gen.integers(2, 9)), None) for _ in range(50)]
    for n1, n2, r in shapes:
        r = r or int(gen.integers(1, min(n1, n2) + 1))
        z = gen.standard_normal((n1, n2))
        err = np.linalg.norm(z - project_lowrank(Signal.from_matrix(z), r).as_matrix())
        for _ in range(200):
            cand = gen.standard_normal((n1, r)) @ gen.standard_normal((n2, r)).T
            assert err <= np.linalg.norm(z - cand) + 1e-12


def test_project_lowrank_rank_and_idempotence(gen):
    z = Signal.from_matrix(gen.standard_normal((9, 7)))
    p = project_lowrank(z, 3)
    s = np.linalg.svd(p.as_matrix(), compute_uv=False)
    assert np.all(s[3:] <= 1e-10 * s[0])
    assert np.allclose(project_lowrank(p, 3).data, p.data, atol=1e-10)


def test_project_lowrank_bad_r():
    with pytest.raises(ModelError):
        project_lowrank(Signal.from_matrix(np.eye(3)), 4)


def test_column_stacking():
    mat = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    assert np.array_equal(mat_to_vec(mat), [1, 3, 5, 2, 4, 6])
    assert np.array_equal(vec_to_mat(mat_to_vec(mat), (3, 2)), mat)


def test_gen_sparse_basic():
    x = gen_sparse(Sparse(512, 4), 1234)
    assert np.count_nonzero(x.data) == 4
    assert abs(np.linalg.norm(x.data) - 1) <= 1e-12
    assert np.array_equal(x.data, gen_sparse(Sparse(512, 4), 1234).data)


def test_gen_sparse_dense_edge():
    x = gen_sparse(Sparse(4, 4), 0)
    assert np.count_nonzero(x.data) == 4
    assert abs(np.linalg.norm(x.data) - 1) <= 1e-12


def test_gen_sparse_support_uniform():
    # each index is in the support with probability k/n = 0.25; 1e5 draws give
    # sd sqrt(0.25 * 0.75 / 1e5) = 1.37e-3, so the 5-sd band is 6.8e-3 < 0.01
    counts = np.zeros(8)
    model = Sparse(8, 2)
    for s in range(100_000):
        counts += gen_sparse(model, s).data != 0
    assert np.max(np.abs(counts / 100_000 - 0.25)) <= 0.01


def test_gen_lowrank_basic():
    x = gen_lowrank(LowRank(64, 64, 2), 5)
    s = np.linalg.svd(x.as_matrix(), compute_uv=False)
    assert abs(np.linalg.norm(x.data) - 1) <= 1e-12
    assert s[1] > 1e-6 and s[2] <= 1e-10
    assert np.allclose(project_lowrank(x, 2).data, x.data, atol=1e-10)


def test_gen_lowrank_full_rank():
    x = gen_lowrank(LowRank(5, 3, 3), 8)
    assert np.linalg.matrix_rank(x.as_matrix()) == 3
    assert abs(np.linalg.norm(x.data) - 1) <= 1e-12


@pytest.mark.parametrize("bad", [lambda: Sparse(4, 5), lambda: Sparse(4, 0), lambda: LowRank(3, 4, 4)])
def test_model_validation(bad):
    with pytest.raises(ModelError):
        bad()


def test_model_project_dispatch(gen):
    z = gen.standard_normal(16)
    assert np.array_equal(Sparse(16, 3).project(z).data, project_sparse(z, 3))
    low = LowRank(4, 4, 1).project(z)
    assert low.shape == (4, 4)
    assert np.linalg.matrix_rank(low.as_matrix()) == 1
