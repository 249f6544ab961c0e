import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fgsense.recovery import (
    gaussian_matrix,
    gen_sparse_signal,
    l0_oracle,
    omp,
    rng_stream,
    score,
    snr_rec,
    split_null_vector,
)
from fgsense.verify import K4_INCIDENCE


def test_streams_are_reproducible_and_distinct():
    a = rng_stream(1, "signal", 3, 7).standard_normal(5)
    b = rng_stream(1, "signal", 3, 7).standard_normal(5)
    c = rng_stream(1, "signal", 3, 8).standard_normal(5)
    d = rng_stream(1, "matrix", 3, 7).standard_normal(5)
    assert (a == b).all() and not (a == c).all() and not (a == d).all()
    with pytest.raises(ValueError):
        rng_stream(1, "noise")


def test_full_support():
    s = gen_sparse_signal(6, 6, rng_stream(1))
    assert s.support == tuple(range(6))
    with pytest.raises(ValueError):
        gen_sparse_signal(6, 7, rng_stream(1))


def test_support_is_uniform():
    rng = rng_stream(2)
    n, k, draws = 10, 2, 100_000
    counts = np.zeros(n)
    for _ in range(draws):
        counts[list(gen_sparse_signal(n, k, rng).support)] += 1
    assert np.abs(counts / draws - k / n).max() < 0.01


def test_gaussian_entries():
    G = gaussian_matrix(1000, 1000, rng_stream(3, "matrix"))
    assert abs(G.mean()) < 0.01
    assert abs(G.var() - 1) < 0.01


def test_one_atom_recovery(k4):
    A = k4.astype(float)
    x = np.zeros(6)
    x[2] = -1.5
    res = score(omp(A, A @ x, 1), x)
    assert res.support == (2,) and res.success and res.snr_db > 250


def test_zero_measurement_exits_immediately(k4):
    res = omp(k4, np.zeros(4), 3)
    assert res.iterations == 0 and not res.estimate.any()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_residual_behaviour(seed, k):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((12, 30))
    y = rng.standard_normal(12)
    res = omp(A, y, k)
    hist = np.array(res.residual_history)
    assert (np.diff(hist) <= 1e-9 * (1 + hist[0])).all()
    r = y - A @ res.estimate
    assert np.abs(A[:, list(res.support)].T @ r).max() < 1e-8 * (1 + np.linalg.norm(y))
    assert res.iterations == len(res.support) <= k


def test_degenerate_selection_is_flagged():
    # two numerically parallel columns: the second pick makes R singular
    B = np.array([[1.0, 1.0], [1.0, 1.0 + 1e-14]])
    deg = omp(B, np.array([1.0, -1.0]), 2)
    assert deg.degenerate and deg.iterations == 2
    assert score(deg, np.array([1.0, 0.0])).success is False


def test_omp_agrees_with_l0_on_small_matrix():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((6, 10))
    for t in range(30):
        s = gen_sparse_signal(10, 2, rng_stream(9, "signal", 2, t))
        x = s.dense()
        y = A @ x
        o = l0_oracle(A, y, 3)
        assert o.unique and o.supports[0] == s.support
        res = score(omp(A, y, 2), x)
        if res.success:
            assert res.support == o.supports[0] or sorted(res.support) == list(o.supports[0])


def test_snr_boundary():
    assert snr_rec([1e5], [1e5 - 1]) == pytest.approx(100.0, abs=1e-9)
    assert snr_rec([1.0, 0.0], [1.0, 0.0]) == math.inf
    with pytest.raises(ValueError):
        snr_rec([0.0], [1.0])


def test_l0_not_found():
    A = np.eye(4)
    res = l0_oracle(A, np.ones(4), 2)
    assert not res.found and res.size is None
    assert l0_oracle(A, np.zeros(4), 2).size == 0
    with pytest.raises(ValueError):
        l0_oracle(np.ones((3, 30)), np.ones(3), 2)


def test_split_null_vector(k4):
    w = np.array([1, -1, 0, 0, -1, 1], dtype=float)
    assert not (k4 @ w).any()
    xs, xl = split_null_vector(w)
    assert np.allclose(k4 @ xs, k4 @ xl)
    assert np.count_nonzero(xs) == 2 and np.count_nonzero(xl) == 2
    res = l0_oracle(k4, k4 @ xl, 2)
    assert not res.unique
