"""Structural analysis of binary measurement matrices.

Everything that decides a spark or a bound is computed in exact
arithmetic: integer Gram matrices, fraction-free elimination, and
:class:`fractions.Fraction` for the rational bounds.  Floats only appear in
reported coherence values.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geometry import GeometrySpec, count_A, count_N
from .incidence import BinaryMatrix, TooLargeError

__all__ = [
    "Coherence",
    "SparkBounds",
    "SearchResult",
    "ChainCheck",
    "AnalysisReport",
    "coherence",
    "gamma_lambda",
    "spark_lower_bounds",
    "bound_chain_check",
    "girth",
    "exact_spark",
    "stopping_distance",
    "maximal_stopping_set",
    "is_stopping_set",
    "integer_rank",
    "null_vector",
    "analyze",
]

MAX_SUBSETS = 10**8
_BLOCK = 1024


def _bits(H) -> np.ndarray:
    return np.asarray(H.bits if isinstance(H, BinaryMatrix) else H)


def _gram_blocks(bits: np.ndarray):
    """Yield (start, block) where block = A[:, start:start+B]^T A, exact."""
    a = bits.astype(np.float64)
    n = a.shape[1]
    for s in range(0, n, _BLOCK):
        block = a[:, s : s + _BLOCK].T @ a
        yield s, np.rint(block).astype(np.int64)


# --- coherence and column statistics ----------------------------------------------

@dataclass(frozen=True)
class Coherence:
    """max |<a_i, a_j>| / (|a_i| |a_j|), kept exactly as
    ``inner / sqrt(norm_sq_i * norm_sq_j)`` for the maximizing pair."""

    inner: int
    norm_sq: tuple[int, int]
    pair: tuple[int, int] | None

    @property
    def value(self) -> float:
        if self.inner == 0:
            return 0.0
        return self.inner / math.sqrt(self.norm_sq[0] * self.norm_sq[1])

    @property
    def squared(self) -> Fraction:
        if self.inner == 0:
            return Fraction(0)
        return Fraction(self.inner**2, self.norm_sq[0] * self.norm_sq[1])

    def __float__(self) -> float:
        return self.value


def _check_columns(bits: np.ndarray) -> None:
    if bits.shape[1] and not bits.any(axis=0).all():
        raise ValueError("matrix has an all-zero column")


def coherence(H) -> Coherence:
    """Mutual coherence of an integer matrix.

    Orthogonal columns give coherence 0 with a warning, since the
    coherence bound is meaningless in that case.
    """
    bits = _bits(H)
    _check_columns(bits)
    n = bits.shape[1]
    if n < 2:
        raise ValueError("coherence needs at least two columns")
    norms = (bits.astype(np.int64) ** 2).sum(axis=0)
    best, best_pair = Fraction(-1), None
    for s, G in _gram_blocks(bits):
        G = np.abs(G)
        rows = np.arange(G.shape[0])
        ratio = G.astype(np.float64) ** 2 / np.outer(norms[s : s + G.shape[0]], norms)
        ratio[rows, rows + s] = -1.0  # a column paired with itself never counts
        i, j = np.unravel_index(np.argmax(ratio), ratio.shape)
        cand = Fraction(int(G[i, j]) ** 2, int(norms[s + i] * norms[j]))
        if cand > best:
            best, best_pair = cand, (int(s + i), int(j))
    i, j = sorted(best_pair)
    inner = abs(int(bits[:, i].astype(np.int64) @ bits[:, j].astype(np.int64)))
    if inner == 0:
        warnings.warn("columns are pairwise orthogonal; coherence reported as 0", stacklevel=2)
        return Coherence(0, (int(norms[i]), int(norms[j])), None)
    return Coherence(inner, (int(norms[i]), int(norms[j])), (i, j))


def gamma_lambda(H) -> tuple[int, int]:
    """Minimum column weight and maximum inner product of distinct columns."""
    bits = _bits(H)
    if bits.shape[1] < 2:
        raise ValueError("need at least two columns")
    gamma = int(bits.sum(axis=0).min())
    lam = 0
    for s, G in _gram_blocks(bits):
        rows = np.arange(G.shape[0])
        G[rows, rows + s] = 0
        lam = max(lam, int(G.max()))
    return gamma, lam


# --- spark lower bounds -------------------------------------------------------------

def _k_below(bound: Fraction) -> int:
    """Largest k with 2k < bound."""
    return max(0, math.ceil(Fraction(bound) / 2) - 1)


@dataclass(frozen=True)
class SparkBounds:
    """Lower bounds on spark; ``None`` marks a bound that does not apply."""

    coherence: Coherence
    gamma: int
    lam: int
    coherence_bound: float | None
    gamma_lambda_bound: Fraction | None
    two_gamma_lambda_bound: Fraction | None
    typeI_bound: int | None = None
    typeII_bound: int | None = None

    @property
    def best(self) -> Fraction:
        """Best exact bound (the coherence bound is irrational in general,
        so its integer ceiling is used; spark is an integer)."""
        cands = [Fraction(1)]
        for b in (self.gamma_lambda_bound, self.two_gamma_lambda_bound, self.typeI_bound, self.typeII_bound):
            if b is not None:
                cands.append(Fraction(b))
        if self.coherence_bound is not None:
            cands.append(Fraction(self._coherence_ceiling()))
        return max(cands)

    def _coherence_ceiling(self) -> int:
        """ceil(1 + 1/mu) computed exactly from mu^2."""
        inv_sq = 1 / self.coherence.squared  # (1/mu)^2
        t = math.isqrt(inv_sq.numerator // inv_sq.denominator)
        while Fraction(t + 1) ** 2 <= inv_sq:
            t += 1
        # t = floor(1/mu); ceil(1 + 1/mu) = 1 + t, plus one if 1/mu is not integral
        return 1 + t + (0 if Fraction(t) ** 2 == inv_sq else 1)

    @property
    def guaranteed_sparsity(self) -> int:
        """Largest k with 2k < best bound: every k-sparse signal is the
        unique sparsest solution."""
        return _k_below(self.best)


def spark_lower_bounds(H) -> SparkBounds:
    """All applicable spark lower bounds for ``H``.

    The geometry bounds need a full (unpunctured) construction record.
    """
    bits = _bits(H)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        coh = coherence(bits)
    gamma, lam = gamma_lambda(bits)
    if lam > 0 and coh.inner > 0:
        coh_bound = 1 + 1 / coh.value
        gl = 1 + Fraction(gamma, lam)
        tgl = Fraction(2 * gamma, lam)
    else:
        coh_bound = gl = tgl = None
    t1 = t2 = None
    meta = getattr(H, "meta", None)
    if meta is not None and meta.full:
        g = meta.geom
        if meta.type == 1:
            t1 = 2 * count_A(g, meta.mu2, meta.mu2 - 1)
        else:
            t2 = 2 * count_N(g, meta.mu1 + 1, meta.mu1)
    return SparkBounds(coh, gamma, lam, coh_bound, gl, tgl, t1, t2)


@dataclass(frozen=True)
class ChainCheck:
    kind: str
    type: int
    mu1: int
    mu2: int
    values: tuple[Fraction, Fraction, Fraction]
    expect_equal: bool

    @property
    def first_ge_second(self) -> bool:
        return self.values[0] >= self.values[1]

    @property
    def second_gt_third(self) -> bool:
        return self.values[1] > self.values[2]

    @property
    def equal(self) -> bool:
        return self.values[0] == self.values[1]

    @property
    def ok(self) -> bool:
        return self.first_ge_second and self.second_gt_third and self.equal == self.expect_equal


def bound_chain_check(g: GeometrySpec, mu1: int, mu2: int, type: int = 1) -> ChainCheck:
    """Evaluate the three nested spark bounds for a full type-I or type-II
    matrix of ``g`` and record whether the first two should coincide.

    Type I: ``(2A(mu2, mu2-1), 2A(mu2, mu1)/A(mu2, mu1+1), 1 + A(mu2, mu2-1))``,
    equal first pair iff ``mu2 == mu1 + 1``.
    Type II: ``(2N(mu1+1, mu1), 2N(mu2, mu1)/N(mu2-1, mu1), 1 + N(mu1+1, mu1))``,
    equal first pair iff ``mu2 == mu1 + 1``, or ``mu1 == 0`` in EG.
    """
    lo = 1 if type == 1 else 0
    if not lo <= mu1 < mu2 < g.r:
        raise ValueError(f"need {lo} <= mu1 < mu2 < r for a type-{type} chain")
    if type == 1:
        u = count_A(g, mu2, mu2 - 1)
        mid = Fraction(2 * count_A(g, mu2, mu1), count_A(g, mu2, mu1 + 1))
        expect = mu2 == mu1 + 1
    elif type == 2:
        u = count_N(g, mu1 + 1, mu1)
        mid = Fraction(2 * count_N(g, mu2, mu1), count_N(g, mu2 - 1, mu1))
        expect = mu2 == mu1 + 1 or (g.is_euclidean and mu1 == 0)
    else:
        raise ValueError(f"type must be 1 or 2, got {type}")
    return ChainCheck(g.kind, type, mu1, mu2, (Fraction(2 * u), mid, Fraction(1 + u)), expect)


# --- girth --------------------------------------------------------------------------

def girth(H) -> int | float:
    """Length of the shortest cycle of the Tanner graph, or ``math.inf``.

    Breadth-first search from every variable node; a search stops expanding
    once it can no longer beat the best cycle found so far.  Two columns
    sharing two rows close a 4-cycle, and when no pair does the girth is
    at least 6, so the scan ends as soon as it meets that floor.
    """
    bits = _bits(H)
    m, n = bits.shape
    floor = 4
    if n >= 2:
        floor = 4 if gamma_lambda(bits)[1] >= 2 else 6
    var_adj = [np.flatnonzero(bits[:, i]).tolist() for i in range(n)]
    chk_adj = [np.flatnonzero(bits[j]).tolist() for j in range(m)]
    # nodes: variables 0..n-1, checks n..n+m-1
    adj = [[n + c for c in cs] for cs in var_adj] + chk_adj
    best = math.inf
    for root in range(n):
        if best <= floor:
            break
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du >= best:
                break
            pu = parent[u]
            for w in adj[u]:
                if w == pu:
                    continue
                dw = dist.get(w)
                if dw is None:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                else:
                    best = min(best, du + dw + 1)
    return best


# --- exact spark ----------------------------------------------------------------------

def integer_rank(vectors) -> int:
    """Rank of a list of integer vectors by fraction-free (Bareiss) elimination."""
    a = [list(map(int, v)) for v in vectors]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        prow = a[rank]
        for i in range(rank + 1, rows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, cols):
                row[j] = (row[j] * p - f * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def null_vector(H, columns) -> list[int]:
    """An integer vector w != 0 with ``H[:, columns] @ w == 0``, or [] if
    the columns are independent."""
    bits = _bits(H)
    cols = list(columns)
    m = bits.shape[0]
    a = [[Fraction(int(bits[i, c])) for c in cols] for i in range(m)]
    s = len(cols)
    pivots = []
    r = 0
    for c in range(s):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(s) if c not in pivots]
    if not free:
        return []
    fc = free[0]
    w = [Fraction(0)] * s
    w[fc] = Fraction(1)
    for row, pc in zip(a, pivots):
        w[pc] = -row[fc]
    scale = math.lcm(*(x.denominator for x in w))
    ints = [int(x * scale) for x in w]
    g = math.gcd(*ints)
    return [x // g for x in ints]


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive minimum-size search.

    ``status`` is ``"found"`` (``value`` and ``certificate`` set),
    ``"above_limit"`` (nothing of size <= ``limit``) or ``"infinite"``.
    """

    status: str
    value: int | float | None
    certificate: tuple[int, ...] = ()
    limit: int | None = None

    def __str__(self) -> str:
        if self.status == "found":
            return str(self.value)
        if self.status == "infinite":
            return "infinite"
        return f">{self.limit}"


def _guard(n: int, limit: int) -> None:
    if math.comb(n, min(limit, n)) > MAX_SUBSETS:
        raise TooLargeError(f"C({n}, {limit}) subsets exceed {MAX_SUBSETS}")


def exact_spark(H, limit: int = 10) -> SearchResult:
    """Smallest number of linearly dependent columns, by exhaustive search
    with exact integer rank.  Certificates are the lexicographically first
    dependent subset of minimum size."""
    bits = _bits(H)
    n = bits.shape[1]
    cols = [bits[:, j].astype(np.int64).tolist() for j in range(n)]
    if integer_rank(cols) == n:
        return SearchResult("infinite", math.inf, (), limit)
    _guard(n, limit)
    for s in range(1, min(limit, n) + 1):
        for subset in itertools.combinations(range(n), s):
            if integer_rank([cols[j] for j in subset]) < s:
                return SearchResult("found", s, subset, limit)
    return SearchResult("above_limit", None, (), limit)


def is_stopping_set(H, columns) -> bool:
    bits = _bits(H)
    cols = list(columns)
    if not cols:
        return False
    weights = bits[:, cols].sum(axis=1)
    return not (weights == 1).any()


def maximal_stopping_set(H) -> list[int]:
    """Union of all stopping sets: what survives iterative peeling of
    columns that are the only 1 in some row."""
    bits = _bits(H).astype(np.int64)
    alive = np.ones(bits.shape[1], dtype=bool)
    while True:
        weights = bits[:, alive].sum(axis=1)
        lonely = weights == 1
        if not lonely.any():
            break
        peel = (bits[lonely] & alive).any(axis=0)
        alive &= ~peel
    return np.flatnonzero(alive).tolist()


def stopping_distance(H, limit: int = 10) -> SearchResult:
    """Size of the smallest nonempty stopping set.

    Only columns of the maximal stopping set can belong to any stopping
    set, so the exhaustive search is restricted to them; the first hit in
    lexicographic order is the same either way.
    """
    bits = _bits(H)
    cand = maximal_stopping_set(bits)
    if not cand:
        return SearchResult("infinite", math.inf, (), limit)
    _guard(len(cand), limit)
    sub = bits[:, cand].astype(np.int64)
    for s in range(1, min(limit, len(cand)) + 1):
        for subset in itertools.combinations(range(len(cand)), s):
            weights = sub[:, subset].sum(axis=1)
            if not (weights == 1).any():
                return SearchResult("found", s, tuple(cand[i] for i in subset), limit)
    return SearchResult("above_limit", None, (), limit)


# --- report -------------------------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return "n/a"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return "inf" if math.isinf(x) else f"{x:.6f}"
    return str(x)


@dataclass(frozen=True)
class AnalysisReport:
    rows: int
    cols: int
    gamma: int
    lam: int
    rho: int
    coherence: Coherence
    girth: int | float
    bounds: SparkBounds
    spark: SearchResult | None = None
    stopping: SearchResult | None = None
    regular: tuple[int, int] | None = field(default=None)

    def items(self) -> list[tuple[str, str]]:
        b = self.bounds
        out = [
            ("rows", str(self.rows)),
            ("cols", str(self.cols)),
            ("gamma", str(self.gamma)),
            ("lambda", str(self.lam)),
            ("rho", str(self.rho)),
            ("regular", "yes" if self.regular else "no"),
            ("coherence", _fmt(self.coherence.value)),
            ("coherence_exact", f"{self.coherence.inner}/sqrt({self.coherence.norm_sq[0]}*{self.coherence.norm_sq[1]})"),
            ("girth", _fmt(self.girth)),
            ("bound_coherence", _fmt(b.coherence_bound)),
            ("bound_gamma_lambda", _fmt(b.gamma_lambda_bound)),
            ("bound_two_gamma_lambda", _fmt(b.two_gamma_lambda_bound)),
            ("bound_type1", _fmt(b.typeI_bound)),
            ("bound_type2", _fmt(b.typeII_bound)),
            ("bound_best", _fmt(b.best)),
            ("guaranteed_sparsity", str(b.guaranteed_sparsity)),
        ]
        if self.spark is not None:
            out.append(("spark", str(self.spark)))
            out.append(("spark_certificate", " ".join(map(str, self.spark.certificate)) or "-"))
        if self.stopping is not None:
            out.append(("stopping_distance", str(self.stopping)))
            out.append(("stopping_certificate", " ".join(map(str, self.stopping.certificate)) or "-"))
        return out

    def to_text(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.items())


def analyze(H, spark_limit: int | None = None, stopping_limit: int | None = None) -> AnalysisReport:
    bits = _bits(H)
    bounds = spark_lower_bounds(H)
    rw = bits.sum(axis=1)
    cw = bits.sum(axis=0)
    regular = None
    if cw.min() == cw.max() and rw.min() == rw.max():
        regular = (int(cw[0]), int(rw[0]))
    return AnalysisReport(
        rows=bits.shape[0],
        cols=bits.shape[1],
        gamma=bounds.gamma,
        lam=bounds.lam,
        rho=int(rw.max()),
        coherence=bounds.coherence,
        girth=girth(bits),
        bounds=bounds,
        spark=exact_spark(bits, spark_limit) if spark_limit else None,
        stopping=stopping_distance(bits, stopping_limit) if stopping_limit else None,
        regular=regular,
    )
