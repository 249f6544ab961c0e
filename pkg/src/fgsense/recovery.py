"""Sparse signals, decoders and the reconstruction success test."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "SparseSignal",
    "RecoveryResult",
    "L0Result",
    "rng_stream",
    "gen_sparse_signal",
    "gaussian_matrix",
    "omp",
    "l0_oracle",
    "snr_rec",
    "score",
    "split_null_vector",
    "SUCCESS_DB",
]

SUCCESS_DB = 100.0
EARLY_EXIT = 1e-12
RANK_TOL = 1e-10
L0_TOL = 1e-9

_PURPOSES = {"signal": 1, "matrix": 2, "oracle": 3}


def rng_stream(seed: int, purpose: str = "signal", k: int = 0, trial: int = 0) -> np.random.Generator:
    """Independent generator keyed by ``(seed, purpose, k, trial)``.

    The key goes straight into a ``SeedSequence`` feeding PCG64, so a given
    key reproduces the same draws on any platform and in any process.
    """
    if purpose not in _PURPOSES:
        raise ValueError(f"unknown stream purpose {purpose!r}")
    if seed < 0 or seed >= 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    ss = np.random.SeedSequence([seed, _PURPOSES[purpose], k, trial])
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True, eq=False)
class SparseSignal:
    n: int
    support: tuple[int, ...]
    values: np.ndarray

    @property
    def k(self) -> int:
        return len(self.support)

    def dense(self) -> np.ndarray:
        x = np.zeros(self.n)
        x[list(self.support)] = self.values
        return x


def gen_sparse_signal(n: int, k: int, rng: np.random.Generator) -> SparseSignal:
    """Uniformly random k-subset support with i.i.d. N(0, 1) values."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    support = np.sort(rng.choice(n, size=k, replace=False))
    values = rng.standard_normal(k)
    return SparseSignal(n, tuple(int(i) for i in support), values)


def gaussian_matrix(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    return rng.standard_normal((m, n))


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    """Output of a decoder; ``snr_db`` and ``success`` are filled by :func:`score`."""

    estimate: np.ndarray
    support: tuple[int, ...]
    residual_norm: float
    iterations: int
    residual_history: tuple[float, ...] = ()
    degenerate: bool = False
    snr_db: float | None = None
    success: bool | None = None


def omp(A, y, k: int) -> RecoveryResult:
    """Orthogonal matching pursuit with exactly ``k`` greedy steps.

    Columns are scored by ``|<a_i, r>| / |a_i|`` (ties to the smallest
    index), and every step refits ``y`` on the chosen columns through a QR
    factorization.  Stops early once the residual falls below
    ``1e-12 * |y|``.  A numerically rank-deficient selection ends the run
    with ``degenerate=True`` instead of raising.
    """
    A = np.asarray(A, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    m, n = A.shape
    if y.shape != (m,):
        raise ValueError(f"measurement has shape {y.shape}, expected ({m},)")
    if not 0 <= k <= m:
        raise ValueError(f"sparsity budget {k} outside [0, {m}]")
    norms = np.linalg.norm(A, axis=0)
    if not (norms > 0).all():
        raise ValueError("matrix has an all-zero column")
    ynorm = float(np.linalg.norm(y))
    residual = y.copy()
    rnorm = ynorm
    history = [rnorm]
    selected: list[int] = []
    mask = np.zeros(n, dtype=bool)
    coef = np.zeros(0)
    for _ in range(k):
        if rnorm <= EARLY_EXIT * ynorm:
            break
        scores = np.abs(A.T @ residual) / norms
        scores[mask] = -1.0
        j = int(np.argmax(scores))
        selected.append(j)
        mask[j] = True
        As = A[:, selected]
        Q, R = np.linalg.qr(As)
        diag = np.abs(np.diag(R))
        if (diag <= RANK_TOL * norms[selected]).any():
            est = np.zeros(n)
            return RecoveryResult(est, tuple(selected), rnorm, len(selected), tuple(history), degenerate=True)
        coef = np.linalg.solve(R, Q.T @ y)
        residual = y - As @ coef
        rnorm = float(np.linalg.norm(residual))
        history.append(rnorm)
    estimate = np.zeros(n)
    if selected:
        estimate[selected] = coef
    return RecoveryResult(estimate, tuple(selected), rnorm, len(selected), tuple(history))


def snr_rec(x, x_hat) -> float:
    """Reconstruction SNR in dB, ``inf`` for an exact match."""
    x = np.asarray(x, dtype=np.float64)
    x_hat = np.asarray(x_hat, dtype=np.float64)
    if x.shape != x_hat.shape:
        raise ValueError("signal and estimate differ in length")
    nx = float(np.linalg.norm(x))
    if nx == 0:
        raise ValueError("SNR is undefined for the zero signal")
    err = float(np.linalg.norm(x - x_hat))
    if err == 0:
        return math.inf
    return 20.0 * math.log10(nx / err)


def score(result: RecoveryResult, x) -> RecoveryResult:
    """Attach SNR and the success verdict (SNR >= 100 dB) to ``result``."""
    if result.degenerate:
        return replace(result, snr_db=-math.inf, success=False)
    snr = snr_rec(x, result.estimate)
    return replace(result, snr_db=snr, success=snr >= SUCCESS_DB)


# --- exhaustive l0 decoding ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class L0Result:
    """Sparsest exact explanations of ``y``.

    ``found`` is False when nothing of size <= kmax explains ``y``.
    """

    found: bool
    size: int | None
    supports: tuple[tuple[int, ...], ...]
    solution: np.ndarray | None

    @property
    def unique(self) -> bool:
        return self.found and len(self.supports) == 1


def _lstsq_residual(As: np.ndarray, y: np.ndarray):
    coef, *_ = np.linalg.lstsq(As, y, rcond=None)
    return coef, float(np.linalg.norm(y - As @ coef))


def l0_oracle(A, y, kmax: int) -> L0Result:
    """Brute-force l0 decoder: the smallest support sizes that reproduce ``y``.

    A support is consistent when the least-squares residual of ``y`` on its
    columns is below ``1e-9 * max(1, |y|)``.
    """
    A = np.asarray(A, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = A.shape[1]
    if n > 25 or kmax > 5:
        raise ValueError("exhaustive l0 decoding is limited to n <= 25, kmax <= 5")
    tol = L0_TOL * max(1.0, float(np.linalg.norm(y)))
    if float(np.linalg.norm(y)) <= tol:
        return L0Result(True, 0, ((),), np.zeros(n))
    for s in range(1, kmax + 1):
        hits = []
        first = None
        for S in itertools.combinations(range(n), s):
            coef, res = _lstsq_residual(A[:, S], y)
            if res < tol:
                hits.append(S)
                if first is None:
                    first = np.zeros(n)
                    first[list(S)] = coef
        if hits:
            return L0Result(True, s, tuple(hits), first)
    return L0Result(False, None, (), None)


def split_null_vector(w) -> tuple[np.ndarray, np.ndarray]:
    """Split a minimal null vector ``w`` into two signals with equal
    measurements.

    With ``a = floor(|supp w| / 2)``, ``x_short`` keeps the first ``a``
    nonzeros of ``w`` and ``x_long = x_short - w`` holds the rest (negated),
    so ``A x_short == A x_long`` while ``|supp x_short| <= |supp x_long|``.
    """
    w = np.asarray(w, dtype=np.float64)
    nz = np.flatnonzero(w)
    a = len(nz) // 2
    if a < 1:
        raise ValueError("null vector must have at least two nonzeros")
    x_short = np.zeros_like(w)
    x_short[nz[:a]] = w[nz[:a]]
    return x_short, x_short - w
