"""Points, flats and parallel bundles of EG(r, q) and PG(r, q).

Subspaces are keyed by their reduced row-echelon basis, which is unique.
A Euclidean flat is a coset of a subspace and is keyed by the coset
representative that vanishes on every pivot column of the basis.  A
projective flat is just a subspace of one dimension higher, and projective
points are vectors whose first nonzero coordinate is 1 (the RREF of a
single vector).

Vectors are tuples of integer-encoded field elements (see :mod:`fgsense.gf`).
Everything here is deterministic: flats are sorted by canonical key, and
Euclidean flats are grouped contiguously by their direction subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .gf import TABLE_LIMIT, FieldSpec, field_from_order

__all__ = [
    "GeometrySpec",
    "Flat",
    "ParallelBundle",
    "make_geometry",
    "enumerate_points",
    "enumerate_flats",
    "flat_index",
    "flat_contains",
    "flat_points",
    "flats_within",
    "parallel_bundles",
    "count_N",
    "count_A",
    "gaussian_binomial",
]

Kind = Literal["EG", "PG"]


@dataclass(frozen=True)
class GeometrySpec:
    kind: Kind
    r: int
    field: FieldSpec

    def __post_init__(self):
        kind = self.kind.upper()
        if kind not in ("EG", "PG"):
            raise ValueError(f"unknown geometry kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.r < 2:
            raise ValueError(f"dimension r={self.r} must be at least 2")
        if self.field.q > TABLE_LIMIT:
            raise ValueError(f"geometry over GF({self.field.q}) is not supported")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def ambient_dim(self) -> int:
        """Length of coordinate vectors: r for EG, r + 1 for PG."""
        return self.r if self.kind == "EG" else self.r + 1

    @property
    def is_euclidean(self) -> bool:
        return self.kind == "EG"

    def __str__(self) -> str:
        return f"{self.kind}({self.r},{self.q})"


def make_geometry(kind: str, r: int, q: int) -> GeometrySpec:
    """Convenience constructor from a field order."""
    return GeometrySpec(kind.upper(), r, field_from_order(q))


@dataclass(frozen=True, slots=True)
class Flat:
    """A canonical mu-flat.

    ``basis`` is in reduced row-echelon form; ``offset`` is ``None`` for
    projective flats.  ``index`` is the position in :func:`enumerate_flats`.
    """

    geom: GeometrySpec = field(repr=False)
    mu: int
    basis: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...] | None
    index: int = field(default=-1, compare=False)
    bundle_id: int | None = field(default=None, compare=False)

    @property
    def key(self):
        return (self.basis, self.offset)


@dataclass(frozen=True)
class ParallelBundle:
    bundle_id: int
    basis: tuple[tuple[int, ...], ...]
    members: tuple[int, ...]


# --- linear algebra over GF(q) with list tables -----------------------------

class _Arith:
    """Plain-list lookup tables; list indexing beats numpy for scalars."""

    def __init__(self, f: FieldSpec):
        self.q = f.q
        self.add = f.add_table.tolist()
        self.mul = f.mul_table.tolist()
        self.neg = f.neg_table.tolist()
        self.inv = f.inv_table.tolist()

    def axpy(self, y, a, x):
        """y + a*x for vectors."""
        add, mul_a = self.add, self.mul[a]
        return [add[yi][mul_a[xi]] for yi, xi in zip(y, x)]

    def rref(self, rows):
        """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
        rows = [list(r) for r in rows]
        if not rows:
            return [], []
        ncols = len(rows[0])
        neg, inv, mul = self.neg, self.inv, self.mul
        pivots = []
        rank = 0
        for c in range(ncols):
            pr = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
            if pr is None:
                continue
            rows[rank], rows[pr] = rows[pr], rows[rank]
            s = inv[rows[rank][c]]
            if s != 1:
                ms = mul[s]
                rows[rank] = [ms[x] for x in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][c]:
                    rows[i] = self.axpy(rows[i], neg[rows[i][c]], rows[rank])
            pivots.append(c)
            rank += 1
            if rank == len(rows):
                break
        return rows[:rank], pivots

    def reduce(self, vec, basis, pivots):
        """Reduce ``vec`` against an RREF basis; zero result means membership."""
        vec = list(vec)
        neg = self.neg
        for row, pc in zip(basis, pivots):
            if vec[pc]:
                vec = self.axpy(vec, neg[vec[pc]], row)
        return vec

    def combine(self, coeffs, basis, start=None):
        """start + sum(coeffs[i] * basis[i])."""
        out = list(start) if start is not None else [0] * len(basis[0])
        for a, row in zip(coeffs, basis):
            if a:
                out = self.axpy(out, a, row)
        return out


@lru_cache(maxsize=None)
def _arith(f: FieldSpec) -> _Arith:
    return _Arith(f)


def _pivots_of(basis) -> list[int]:
    return [next(i for i, x in enumerate(row) if x) for row in basis]


@lru_cache(maxsize=64)
def _rref_matrices(q: int, n: int, d: int) -> tuple:
    """Every d x n RREF matrix over a q-element alphabet, sorted by key.

    Generated directly from pivot patterns and free entries, so the count
    equals the Gaussian binomial coefficient with no deduplication.
    """
    if d == 0:
        return ((),)
    out = []
    for pivots in itertools.combinations(range(n), d):
        pset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pset]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            out.append(tuple(tuple(r) for r in rows))
    out.sort()
    return tuple(out)


def _offsets(q: int, n: int, pivots) -> list[tuple[int, ...]]:
    """Coset representatives: vectors vanishing on ``pivots``, lex order."""
    free = [j for j in range(n) if j not in set(pivots)]
    out = []
    for values in itertools.product(range(q), repeat=len(free)):
        v = [0] * n
        for j, x in zip(free, values):
            v[j] = x
        out.append(tuple(v))
    return out


# --- enumeration ----------------------------------------------------------------

def _check_mu(g: GeometrySpec, mu: int) -> None:
    if not 0 <= mu <= g.r:
        raise ValueError(f"flat dimension {mu} outside [0, {g.r}] for {g}")


@lru_cache(maxsize=16)
def enumerate_flats(g: GeometrySpec, mu: int) -> tuple[Flat, ...]:
    """All mu-flats of ``g`` in canonical order.

    Euclidean flats come bundle by bundle (bundles sorted by direction
    subspace, members by offset); projective flats are sorted by basis.
    """
    _check_mu(g, mu)
    q, n = g.q, g.ambient_dim
    flats = []
    if g.is_euclidean:
        for bid, basis in enumerate(_rref_matrices(q, n, mu)):
            for off in _offsets(q, n, _pivots_of(basis)):
                flats.append(Flat(g, mu, basis, off, len(flats), bid))
    else:
        for basis in _rref_matrices(q, n, mu + 1):
            flats.append(Flat(g, mu, basis, None, len(flats)))
    return tuple(flats)


@lru_cache(maxsize=16)
def flat_index(g: GeometrySpec, mu: int) -> dict:
    """Canonical key -> global index for the mu-flats of ``g``."""
    return {f.key: f.index for f in enumerate_flats(g, mu)}


def enumerate_points(g: GeometrySpec) -> list[tuple[int, ...]]:
    """Points as coordinate vectors, in the order of the 0-flats."""
    if g.is_euclidean:
        return [f.offset for f in enumerate_flats(g, 0)]
    return [f.basis[0] for f in enumerate_flats(g, 0)]


def canonical_flat(g: GeometrySpec, vectors, point=None) -> tuple:
    """Canonical key of the flat spanned by ``vectors`` (through ``point``
    for EG).  Returns ``(basis, offset)``."""
    ar = _arith(g.field)
    basis, pivots = ar.rref(vectors) if len(vectors) else ([], [])
    basis_t = tuple(tuple(r) for r in basis)
    if not g.is_euclidean:
        return (basis_t, None)
    if point is None:
        point = [0] * g.r
    off = ar.reduce(point, basis, pivots)
    return (basis_t, tuple(off))


def lookup(g: GeometrySpec, vectors, point=None) -> Flat:
    """The enumerated flat spanned by ``vectors`` (and ``point`` for EG)."""
    basis, off = canonical_flat(g, vectors, point)
    mu = len(basis) if g.is_euclidean else len(basis) - 1
    return enumerate_flats(g, mu)[flat_index(g, mu)[(basis, off)]]


def flat_contains(outer: Flat, inner: Flat) -> bool:
    """True iff every point of ``inner`` lies in ``outer``.

    Decided by linear algebra against the RREF basis of ``outer``.
    """
    if outer.geom != inner.geom:
        raise ValueError("flats belong to different geometries")
    if inner.mu > outer.mu:
        return False
    ar = _arith(outer.geom.field)
    pivots = _pivots_of(outer.basis)
    for row in inner.basis:
        if any(ar.reduce(row, outer.basis, pivots)):
            return False
    if outer.offset is not None:
        diff = ar.axpy(inner.offset, ar.neg[1], outer.offset)
        if any(ar.reduce(diff, outer.basis, pivots)):
            return False
    return True


def flats_within(outer: Flat, mu1: int) -> list[int]:
    """Global indices of the mu1-flats contained in ``outer``.

    Sub-flats are generated from RREF matrices in the coordinate space of
    ``outer`` and resolved through the canonical-key table.
    """
    g = outer.geom
    if not 0 <= mu1 <= outer.mu:
        raise ValueError(f"mu1={mu1} must lie in [0, {outer.mu}]")
    ar = _arith(g.field)
    table = flat_index(g, mu1)
    basis = outer.basis
    out = []
    if g.is_euclidean:
        for coords in _rref_matrices(g.q, outer.mu, mu1):
            sub = [ar.combine(c, basis) for c in coords]
            sub_basis, sub_piv = ar.rref(sub) if sub else ([], [])
            sub_key = tuple(tuple(r) for r in sub_basis)
            for a in _offsets(g.q, outer.mu, _pivots_of(coords)):
                pt = ar.combine(a, basis, outer.offset) if basis else list(outer.offset)
                off = tuple(ar.reduce(pt, sub_basis, sub_piv))
                out.append(table[(sub_key, off)])
    else:
        for coords in _rref_matrices(g.q, outer.mu + 1, mu1 + 1):
            sub = [ar.combine(c, basis) for c in coords]
            sub_basis, _ = ar.rref(sub)
            out.append(table[(tuple(tuple(r) for r in sub_basis), None)])
    return out


def flat_points(f: Flat) -> list[int]:
    """Point indices of a flat."""
    return flats_within(f, 0)


def parallel_bundles(g: GeometrySpec, mu: int) -> list[ParallelBundle]:
    """Group the Euclidean mu-flats by direction subspace."""
    if not g.is_euclidean:
        raise NotImplementedError("a projective geometry has no parallel structure")
    bundles: dict[int, list[int]] = {}
    bases = {}
    for f in enumerate_flats(g, mu):
        bundles.setdefault(f.bundle_id, []).append(f.index)
        bases[f.bundle_id] = f.basis
    return [ParallelBundle(b, bases[b], tuple(m)) for b, m in sorted(bundles.items())]


# --- counting ---------------------------------------------------------------------

def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if not 0 <= k <= n:
        return 0
    value = Fraction(1)
    for i in range(k):
        value *= Fraction(q ** (n - i) - 1, q ** (i + 1) - 1)
    assert value.denominator == 1
    return int(value)


def _check_order(g: GeometrySpec, mu2: int, mu1: int) -> None:
    if not 0 <= mu1 <= mu2 <= g.r:
        raise ValueError(f"need 0 <= mu1 <= mu2 <= {g.r}, got mu1={mu1}, mu2={mu2}")


def count_N(g: GeometrySpec, mu2: int, mu1: int) -> int:
    """Number of mu1-flats inside a given mu2-flat.

    ``count_N(g, g.r, mu)`` is the total number of mu-flats.
    """
    _check_order(g, mu2, mu1)
    q = g.q
    value = Fraction(1)
    if g.is_euclidean:
        value *= q ** (mu2 - mu1)
        for i in range(1, mu1 + 1):
            value *= Fraction(q ** (mu2 - i + 1) - 1, q ** (mu1 - i + 1) - 1)
    else:
        for i in range(0, mu1 + 1):
            value *= Fraction(q ** (mu2 - i + 1) - 1, q ** (mu1 - i + 1) - 1)
    assert value.denominator == 1
    return int(value)


def count_A(g: GeometrySpec, mu2: int, mu1: int) -> int:
    """Number of mu2-flats containing a given mu1-flat (same for EG and PG)."""
    _check_order(g, mu2, mu1)
    q, r = g.q, g.r
    value = Fraction(1)
    for i in range(mu1 + 1, mu2 + 1):
        value *= Fraction(q ** (r - i + 1) - 1, q ** (mu2 - i + 1) - 1)
    assert value.denominator == 1
    return int(value)
