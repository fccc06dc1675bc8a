import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcspbp.errors import DimensionError
from qcspbp.sensing import (apply, apply_adjoint, build_bernoulli, build_gaussian, build_operator,
                            build_partial_dct, dct_rows, from_matrix)

KINDS = ["gaussian", "bernoulli", "partial-dct"]


def test_gaussian_deterministic():
    a = build_gaussian(2, 3, 7)
    b = build_gaussian(2, 3, 7)
    assert a.matrix.shape == (2, 3)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(a.matrix, build_gaussian(2, 3, 8).matrix)


def test_gaussian_moments():
    # 2,048,000 entries: standard error of the mean is 1/sqrt(N) ~ 7.0e-4 and of the
    # variance sqrt(2/N) ~ 9.9e-4; bands below are 5 standard errors
    entries = build_gaussian(4000, 512, 1).matrix
    se = 1 / np.sqrt(entries.size)
    assert abs(entries.mean()) <= 5 * se
    assert abs(entries.var() - 1) <= 5 * np.sqrt(2) * se


def test_gaussian_column_norms():
    # (1/m)||Phi e_i||^2 ~ chi2_m / m with sd sqrt(2/m) = 0.022 at m=4000
    op = build_gaussian(4000, 512, 3)
    col = np.sum(op.matrix ** 2, axis=0) / op.m
    assert np.max(np.abs(col - 1)) <= 0.1


@pytest.mark.parametrize("m,n", [(0, 3), (3, 0)])
def test_gaussian_bad_dims(m, n):
    with pytest.raises(DimensionError):
        build_gaussian(m, n, 1)


def test_dct_n2_by_hand():
    # D = [[1/sqrt2, 1/sqrt2], [cos(pi/4), cos(3pi/4)]], so sqrt(2) D = [[1, 1], [1, -1]]
    op = build_partial_dct(2, 2, 123)
    assert np.allclose(apply(op, [1.0, 0.0]), [1.0, 1.0], atol=1e-14)
    assert np.allclose(apply(op, [0.0, 1.0]), [1.0, -1.0], atol=1e-14)


def test_dct_rows_closed_form_orthonormal():
    d = dct_rows(16, np.arange(16))
    assert np.allclose(d @ d.T, np.eye(16), atol=1e-12)


def test_dct_full_rows_isometry(gen):
    op = build_partial_dct(16, 16, 5)
    for _ in range(100):
        x = gen.standard_normal(16)
        assert abs(np.sum(apply(op, x) ** 2) / 16 - x @ x) <= 1e-10
    full = op.to_dense()
    assert np.max(np.abs(full @ full.T / 16 - np.eye(16))) <= 1e-10


def test_dct_rows_distinct_sorted():
    op = build_partial_dct(100, 256, 9)
    assert len(set(op.rows.tolist())) == 100
    assert np.all(np.diff(op.rows) > 0)
    assert op.rows.min() >= 0 and op.rows.max() < 256


def test_dct_row_selection_uniform():
    # each index is kept with probability m/n = 1/4; 4000 draws give sd 0.0068
    counts = np.zeros(8)
    for s in range(4000):
        counts[build_partial_dct(2, 8, s).rows] += 1
    assert np.max(np.abs(counts / 4000 - 0.25)) <= 5 * np.sqrt(0.25 * 0.75 / 4000)


@pytest.mark.parametrize("m,n", [(5, 4), (0, 4)])
def test_dct_bad_dims(m, n):
    with pytest.raises(DimensionError):
        build_partial_dct(m, n, 1)


def test_dct_fast_matches_closed_form(gen):
    op = build_partial_dct(37, 128, 4)
    dense = op.to_dense()
    x, y = gen.standard_normal(128), gen.standard_normal(37)
    assert np.max(np.abs(apply(op, x) - dense @ x)) <= 1e-10
    assert np.max(np.abs(apply_adjoint(op, y) - dense.T @ y)) <= 1e-10


def test_dct_roundtrip():
    op = build_partial_dct(8, 8, 0)
    x = np.arange(8.0) - 3.5
    assert np.allclose(apply_adjoint(op, apply(op, x)) / 8, x, atol=1e-10)


def test_hand_matrix():
    op = from_matrix([[1, 2], [3, 4]])
    assert np.array_equal(apply(op, [1, 1]), [3, 7])
    assert np.array_equal(apply_adjoint(op, [1, 0]), [1, 2])


@pytest.mark.parametrize("kind", KINDS)
def test_zero_in_zero_out(kind):
    op = build_operator(kind, 6, 10, 2)
    assert not np.any(apply(op, np.zeros(10)))
    assert not np.any(apply_adjoint(op, np.zeros(6)))


@pytest.mark.parametrize("kind", KINDS)
def test_adjoint_identity(kind, gen):
    op = build_operator(kind, 23, 40, 77)
    for _ in range(50):
        x, y = gen.standard_normal(40), gen.standard_normal(23)
        gap = abs(apply(op, x) @ y - x @ apply_adjoint(op, y))
        assert gap <= 1e-9 * np.linalg.norm(x) * np.linalg.norm(y)


@pytest.mark.parametrize("kind", KINDS)
def test_dimension_mismatch(kind):
    op = build_operator(kind, 4, 8, 0)
    with pytest.raises(DimensionError):
        apply(op, np.zeros(7))
    with pytest.raises(DimensionError):
        apply_adjoint(op, np.zeros(5))


def test_bernoulli_entries():
    op = build_bernoulli(50, 60, 3)
    assert set(np.unique(op.matrix)) == {-1.0, 1.0}


@settings(max_examples=30, deadline=None)
@given(kind=st.sampled_from(KINDS), seed=st.integers(0, 2**64 - 1),
       m=st.integers(1, 20), extra=st.integers(0, 20))
def test_determinism(kind, seed, m, extra):
    n = m + extra
    probe = np.linspace(-1, 1, n)
    a = apply(build_operator(kind, m, n, seed), probe)
    b = apply(build_operator(kind, m, n, seed), probe)
    assert np.array_equal(a, b)


def test_operator_is_read_only():
    op = build_gaussian(3, 3, 0)
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 1.0
