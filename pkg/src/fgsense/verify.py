"""Invariant batteries that can be run from the command line.

Each suite returns a list of :class:`Check` records; a suite passes when
every check does.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import analysis, geometry as geo, incidence, recovery
from .gf import field_from_order

__all__ = ["Check", "SUITES", "run_suite", "lemma1_holds", "lemma2_holds", "prop1_battery",
           "random_binary_matrix", "K4_INCIDENCE", "hamming_matrix"]

K4_INCIDENCE = np.array(
    [
        [1, 1, 1, 0, 0, 0],
        [1, 0, 0, 1, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1],
    ],
    dtype=np.uint8,
)


def hamming_matrix(m: int) -> np.ndarray:
    """m x (2^m - 1) parity-check matrix: every nonzero binary column once."""
    return np.array([[(j >> i) & 1 for j in range(1, 2**m)] for i in range(m)], dtype=np.uint8)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    observed: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.observed}"


def _eq(name: str, observed, expected) -> Check:
    return Check(name, observed == expected, f"{observed} (expected {expected})")


# --- fields ------------------------------------------------------------------------

FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 32)


def _field_checks(q: int, seed: int = 0) -> list[Check]:
    f = field_from_order(q)
    add, mul = f.add_table, f.mul_table
    if q <= 9:
        a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, q, size=(3, 10**4))
    ok = (
        np.array_equal(add[add[a, b], c], add[a, add[b, c]])
        and np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
        and np.array_equal(add[a, b], add[b, a])
        and np.array_equal(mul[a, b], mul[b, a])
        and np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]])
    )
    nonzero = range(1, q)
    fermat = all(f.pow(x, q - 1) == 1 for x in nonzero)
    inverse = all(f.mul(x, f.inv(x)) == 1 for x in nonzero)
    again = field_from_order(q)
    return [
        Check(f"GF({q}) axioms", bool(ok), "exhaustive" if q <= 9 else "10^4 random triples"),
        Check(f"GF({q}) a^(q-1)=1", fermat),
        Check(f"GF({q}) a*inv(a)=1", inverse),
        _eq(f"GF({q}) element count", len(set(range(f.q))), q),
        Check(f"GF({q}) deterministic modulus", again.modulus == f.modulus, str(f.modulus)),
    ]


def suite_fields() -> list[Check]:
    return [c for q in FIELD_ORDERS for c in _field_checks(q)]


# --- small geometries ---------------------------------------------------------------

def _contents(g, outer_mu: int, inner_mu: int) -> list[frozenset]:
    return [frozenset(geo.flats_within(f, inner_mu)) for f in geo.enumerate_flats(g, outer_mu)]


def lemma1_holds(g: geo.GeometrySpec, mu1: int, mu2: int) -> bool:
    """For every set of at most A(mu2, mu2-1) distinct mu1-flats and every
    member j, some (mu2-1)-flat contains flat j and none of the others."""
    u = geo.count_A(g, mu2, mu2 - 1)
    holders = _contents(g, mu2 - 1, mu1)  # (mu2-1)-flat -> mu1-flats inside
    by_inner: dict[int, list[frozenset]] = {}
    for content in holders:
        for i in content:
            by_inner.setdefault(i, []).append(content)
    n = geo.count_N(g, g.r, mu1)
    for l in range(1, u + 1):
        for S in itertools.combinations(range(n), l):
            for j in S:
                others = set(S) - {j}
                if not any(others.isdisjoint(c) for c in by_inner[j]):
                    return False
    return True


def lemma2_holds(g: geo.GeometrySpec, mu1: int, mu2: int) -> bool:
    """For every set of at most N(mu1+1, mu1) distinct mu2-flats and every
    member j, some (mu1+1)-flat lies in flat j and in none of the others."""
    u = geo.count_N(g, mu1 + 1, mu1)
    inside = _contents(g, mu2, mu1 + 1)  # mu2-flat -> (mu1+1)-flats inside
    J = len(inside)
    for l in range(1, u + 1):
        for S in itertools.combinations(range(J), l):
            for j in S:
                rest = set().union(*(inside[i] for i in S if i != j))
                if not inside[j] - rest:
                    return False
    return True


LEMMA_CASES = (
    ("EG", 2, 2, 0, 1),
    ("EG", 2, 3, 0, 1),
    ("PG", 2, 2, 0, 1),
    ("PG", 2, 3, 0, 1),
    ("EG", 3, 2, 0, 2),
    ("PG", 3, 2, 0, 2),
)


def suite_small_geometries() -> list[Check]:
    checks = []
    for kind, r, q, mu1, mu2 in LEMMA_CASES:
        g = geo.make_geometry(kind, r, q)
        checks.append(Check(f"lemma 1 {g} mu1={mu1} mu2={mu2}", lemma1_holds(g, mu1, mu2)))
        checks.append(Check(f"lemma 2 {g} mu1={mu1} mu2={mu2}", lemma2_holds(g, mu1, mu2)))
    for kind in ("EG", "PG"):
        for r in (2, 3):
            for q in (2, 3, 4):
                g = geo.make_geometry(kind, r, q)
                for mu in range(r):
                    checks.append(_eq(f"|{g} {mu}-flats|", len(geo.enumerate_flats(g, mu)), geo.count_N(g, r, mu)))
                for mu1, mu2 in itertools.combinations(range(r), 2):
                    total = sum(len(geo.flats_within(f, mu1)) for f in geo.enumerate_flats(g, mu2))
                    want = geo.count_N(g, r, mu1) * geo.count_A(g, mu2, mu1)
                    checks.append(_eq(f"{g} incidences mu1={mu1} mu2={mu2}", total, want))
                if kind == "EG":
                    for mu in range(1, r):
                        checks.append(Check(f"{g} {mu}-flat bundles partition points", _bundles_partition(g, mu)))
    return checks


def _bundles_partition(g, mu: int) -> bool:
    flats = geo.enumerate_flats(g, mu)
    for b in geo.parallel_bundles(g, mu):
        pts = [p for i in b.members for p in geo.flat_points(flats[i])]
        if len(b.members) != g.q ** (g.r - mu) or sorted(pts) != list(range(g.q**g.r)):
            return False
    return True


# --- bound chains ------------------------------------------------------------------------

CHAIN_ORDERS = (2, 3, 4, 5, 7, 8)


def chain_cases():
    for kind in ("EG", "PG"):
        for r in (2, 3, 4):
            for q in CHAIN_ORDERS:
                g = geo.make_geometry(kind, r, q)
                for mu1, mu2 in itertools.combinations(range(r), 2):
                    for t in (1, 2):
                        if t == 1 and mu1 == 0:
                            continue
                        yield g, mu1, mu2, t


def suite_bounds_chain() -> list[Check]:
    out = []
    for g, mu1, mu2, t in chain_cases():
        c = analysis.bound_chain_check(g, mu1, mu2, t)
        vals = ", ".join(analysis._fmt(v) for v in c.values)
        out.append(Check(f"chain {g} type {t} mu1={mu1} mu2={mu2}", c.ok, f"({vals}) equal={c.equal}"))
    return out


# --- l0 necessity battery --------------------------------------------------------------------

def random_binary_matrix(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Bernoulli(1/2) entries, zero columns redrawn."""
    A = rng.integers(0, 2, size=(m, n), dtype=np.uint8)
    while True:
        zero = ~A.any(axis=0)
        if not zero.any():
            return A
        A[:, zero] = rng.integers(0, 2, size=(m, int(zero.sum())), dtype=np.uint8)


@dataclass(frozen=True)
class Prop1Outcome:
    spark: int
    unique_ok: int
    unique_fail: int
    counterexample_ok: bool


def prop1_check(A: np.ndarray, rng: np.random.Generator, signals: int = 20) -> Prop1Outcome:
    """Exact recovery below spark/2 and a split-null-vector counterexample at
    ceil(spark/2)."""
    sp = analysis.exact_spark(A, limit=min(A.shape[1], 10))
    if sp.status != "found":
        raise ValueError("battery needs a matrix with finite spark")
    sigma = sp.value
    n = A.shape[1]
    good = bad = 0
    for k in range(1, (sigma - 1) // 2 + 1):
        for _ in range(signals):
            x = recovery.gen_sparse_signal(n, k, rng).dense()
            res = recovery.l0_oracle(A, A @ x, k)
            if res.unique and res.supports[0] == tuple(np.flatnonzero(x)) and np.allclose(res.solution, x):
                good += 1
            else:
                bad += 1
    w = np.zeros(n)
    w[list(sp.certificate)] = analysis.null_vector(A, sp.certificate)
    x_short, x_long = recovery.split_null_vector(w)
    k = math.ceil(sigma / 2)
    res = recovery.l0_oracle(A, A @ x_long, k)
    same = np.allclose(A @ x_short, A @ x_long)
    recovered = res.unique and res.supports[0] == tuple(np.flatnonzero(x_long))
    return Prop1Outcome(sigma, good, bad, bool(same and len(np.flatnonzero(x_long)) <= k and not recovered))


def prop1_battery(count: int = 50, seed: int = 1, signals: int = 20):
    """Yield (label, outcome) for ``count`` random 6x10 matrices plus the K4
    and Hamming matrices."""
    mats = [("K4", K4_INCIDENCE), ("Hamming(3)", hamming_matrix(3))]
    for i in range(count):
        mats.append((f"random#{i}", random_binary_matrix(6, 10, recovery.rng_stream(seed, "oracle", 0, i))))
    for i, (label, A) in enumerate(mats):
        yield label, prop1_check(A, recovery.rng_stream(seed, "oracle", 1, i), signals)


def suite_oracle() -> list[Check]:
    out = []
    for label, o in prop1_battery():
        out.append(
            Check(
                f"l0 necessity {label}",
                o.unique_fail == 0 and o.counterexample_ok,
                f"spark={o.spark} unique={o.unique_ok} failures={o.unique_fail} counterexample={o.counterexample_ok}",
            )
        )
    return out


# --- reference constants -------------------------------------------------------------------------

def suite_reference_values() -> list[Check]:
    from .harness import ExperimentConfig, run_experiment

    G = geo.make_geometry
    c = []
    c.append(_eq("GF(2^4) order", field_from_order(16).q, 16))
    c.append(_eq("GF(2^5) order", field_from_order(32).q, 32))

    eg42, pg34, eg37, eg38 = G("EG", 4, 2), G("PG", 3, 4), G("EG", 3, 7), G("EG", 3, 8)
    eg216, eg232 = G("EG", 2, 16), G("EG", 2, 32)
    for g, mu, want in [
        (eg42, 3, 30), (eg42, 1, 120), (pg34, 0, 85), (pg34, 1, 357), (eg37, 0, 343),
        (eg37, 1, 2793), (eg38, 2, 584), (eg38, 1, 4672), (eg216, 0, 256), (eg216, 1, 272),
        (eg232, 0, 1024), (eg232, 1, 1056),
    ]:
        c.append(_eq(f"|{g} {mu}-flats|", len(geo.enumerate_flats(g, mu)), want))
    for g, want in [(eg216, (17, 16)), (eg232, (33, 32))]:
        b = geo.parallel_bundles(g, 1)
        c.append(_eq(f"{g} line bundles", (len(b), len({len(x.members) for x in b}) == 1 and len(b[0].members)), want))
    c.append(_eq("N_EG(2,1) in EG(3,8)", geo.count_N(eg38, 2, 1), 72))
    c.append(_eq("A_EG(2,1) in EG(3,8)", geo.count_A(eg38, 2, 1), 9))
    c.append(_eq("N_PG(1,0) in PG(3,4)", geo.count_N(pg34, 1, 0), 5))
    c.append(_eq("A_PG(1,0) in PG(3,4)", geo.count_A(pg34, 1, 0), 21))
    c.append(_eq("A_EG(3,1) in EG(4,2)", geo.count_A(eg42, 3, 1), 7))
    c.append(_eq("N_EG(3,1) in EG(4,2)", geo.count_N(eg42, 3, 1), 28))
    c.append(_eq("N_EG(1,0) in EG(3,7)", geo.count_N(eg37, 1, 0), 7))
    c.append(_eq("A_EG(1,0) in EG(3,7)", geo.count_A(eg37, 1, 0), 57))

    builds = {
        "benchmark 1": (eg42, 1, 3, 1, (30, 120), (7, 28), 6, 4),
        "benchmark 2": (pg34, 0, 1, 2, (85, 357), (5, 21), 10, 6),
        "benchmark 3": (eg37, 0, 1, 2, (343, 2793), (7, 57), 14, 6),
        "benchmark 4": (eg38, 1, 2, 1, (584, 4672), (9, 72), 18, 6),
    }
    mats = {}
    for name, (g, mu1, mu2, t, shape, reg, bound, gir) in builds.items():
        H = incidence.build_incidence(g, mu1, mu2, t)
        mats[name] = H
        b = analysis.spark_lower_bounds(H)
        c.append(_eq(f"{name} shape", H.shape, shape))
        c.append(_eq(f"{name} regularity", H.is_regular(), reg))
        c.append(_eq(f"{name} geometry spark bound", b.typeI_bound or b.typeII_bound, bound))
        c.append(_eq(f"{name} girth", analysis.girth(H), gir))
    c.append(_eq("benchmark 1 lambda", analysis.gamma_lambda(mats["benchmark 1"]), (7, 3)))
    c.append(_eq("benchmark 2 lambda", analysis.gamma_lambda(mats["benchmark 2"]), (5, 1)))

    H5 = incidence.build_incidence(eg216, 0, 1, 1)
    for cnt, rows in [(4, 64), (5, 80), (6, 96), (7, 112)]:
        S = incidence.select_row_bundles(H5, cnt)
        c.append(_eq(f"EG(2,16) first {cnt} bundles", (S.shape, set(S.column_weights().tolist())), ((rows, 256), {cnt})))
    H6 = incidence.build_incidence(eg232, 0, 1, 1)
    for cnt, rows in [(6, 192), (8, 256), (10, 320), (12, 384)]:
        c.append(_eq(f"EG(2,32) first {cnt} bundles", incidence.select_row_bundles(H6, cnt).shape, (rows, 1024)))
    Hb = incidence.select_row_bundles(H6, 10)
    nxt = geo.parallel_bundles(eg232, 1)[10]
    for j, cols in [(0, 1024), (4, 896), (8, 768), (12, 640)]:
        D = incidence.delete_covered_columns(Hb, nxt, j)
        c.append(_eq(f"EG(2,32) delete {j} lines", (D.shape, set(D.column_weights().tolist())), ((320, cols), {10})))

    c.append(_eq("K4 gamma, lambda", analysis.gamma_lambda(K4_INCIDENCE), (2, 1)))
    c.append(_eq("K4 spark", analysis.exact_spark(K4_INCIDENCE, 6).value, 4))
    c.append(_eq("K4 stopping distance", analysis.stopping_distance(K4_INCIDENCE, 6).value, 3))
    c.append(_eq("Hamming(3) spark", analysis.exact_spark(hamming_matrix(3), 7).value, 3))
    c.append(_eq("Hamming(3) stopping distance", analysis.stopping_distance(hamming_matrix(3), 7).value, 3))

    ex1 = run_experiment(ExperimentConfig(mats["benchmark 1"], 1, 2, 1, 500, seed=1))
    c.append(_eq("benchmark 1 OMP percent, k=1..2", [p.percent for p in ex1.points], [100.0] * 2))
    ex2 = run_experiment(ExperimentConfig(mats["benchmark 2"], 1, 9, 1, 500, seed=1))
    c.append(_eq("benchmark 2 OMP percent, k=1..9", [p.percent for p in ex2.points], [100.0] * 9))
    return c


SUITES = {
    "fields": suite_fields,
    "small-geometries": suite_small_geometries,
    "bounds-chain": suite_bounds_chain,
    "oracle": suite_oracle,
    "paper-values": suite_reference_values,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name]()
