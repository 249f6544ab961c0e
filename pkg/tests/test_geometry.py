import itertools

import pytest

from fgsense import geometry as geo
from fgsense.gf import field_from_order
from fgsense.verify import lemma1_holds, lemma2_holds


def _point_sets_bruteforce(kind, r, q, mu):
    """Every mu-flat as a frozenset of coordinate tuples, by spanning all
    tuples of vectors (independent of the RREF enumeration)."""
    f = field_from_order(q)
    n = r if kind == "EG" else r + 1
    space = list(itertools.product(range(q), repeat=n))
    dim = mu if kind == "EG" else mu + 1

    def span(vecs):
        out = set()
        for coeffs in itertools.product(range(q), repeat=len(vecs)):
            v = [0] * n
            for c, w in zip(coeffs, vecs):
                v = [f.add(a, f.mul(c, b)) for a, b in zip(v, w)]
            out.add(tuple(v))
        return frozenset(out)

    subspaces = {s for vecs in itertools.combinations(space, dim) if len(s := span(vecs)) == q**dim}
    if kind == "EG":
        return {frozenset(tuple(f.add(a, b) for a, b in zip(v, p)) for v in s) for s in subspaces for p in space}
    return subspaces


def _as_sets(g, mu):
    pts = geo.enumerate_points(g)
    if g.is_euclidean:
        return {frozenset(pts[i] for i in geo.flat_points(fl)) for fl in geo.enumerate_flats(g, mu)}
    # projective points -> their full nonzero lines so the comparison is representation free
    f = g.field
    out = set()
    for fl in geo.enumerate_flats(g, mu):
        vecs = set()
        for i in geo.flat_points(fl):
            for c in range(1, g.q):
                vecs.add(tuple(f.mul(c, x) for x in pts[i]))
        vecs.add(tuple([0] * (g.r + 1)))
        out.add(frozenset(vecs))
    return out


@pytest.mark.parametrize("kind,r,q,mu", [("EG", 2, 3, 1), ("EG", 3, 2, 1), ("EG", 3, 2, 2), ("PG", 2, 2, 1), ("PG", 2, 3, 1)])
def test_flats_match_bruteforce(kind, r, q, mu):
    g = geo.make_geometry(kind, r, q)
    assert _as_sets(g, mu) == _point_sets_bruteforce(kind, r, q, mu)


@pytest.mark.parametrize(
    "kind,r,q,mu,count",
    [
        ("EG", 4, 2, 3, 30),
        ("EG", 4, 2, 1, 120),
        ("PG", 3, 4, 0, 85),
        ("PG", 3, 4, 1, 357),
        ("EG", 3, 7, 0, 343),
        ("EG", 2, 16, 1, 272),
        ("EG", 2, 32, 1, 1056),
    ],
)
def test_flat_counts(kind, r, q, mu, count):
    g = geo.make_geometry(kind, r, q)
    assert len(geo.enumerate_flats(g, mu)) == count == geo.count_N(g, r, mu)


@pytest.mark.parametrize("kind", ["EG", "PG"])
@pytest.mark.parametrize("r", [2, 3, 4])
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_counting_formulas_integral_and_consistent(kind, r, q):
    g = geo.make_geometry(kind, r, q)
    for mu1, mu2 in itertools.combinations(range(r + 1), 2):
        # double counting of incident pairs
        assert geo.count_N(g, r, mu2) * geo.count_N(g, mu2, mu1) == geo.count_N(g, r, mu1) * geo.count_A(g, mu2, mu1)
    if q ** (r + 1) <= 3000:
        for mu in range(r):
            assert len(geo.enumerate_flats(g, mu)) == geo.count_N(g, r, mu)


def test_gaussian_binomial():
    assert geo.gaussian_binomial(4, 2, 2) == 35
    assert geo.gaussian_binomial(3, 1, 4) == 21
    assert geo.gaussian_binomial(3, 4, 2) == 0


def test_containment_counts():
    g = geo.make_geometry("EG", 4, 2)
    planes, lines = geo.enumerate_flats(g, 3), geo.enumerate_flats(g, 1)
    per_line = [0] * len(lines)
    for p in planes:
        inside = geo.flats_within(p, 1)
        assert len(inside) == 28
        for i in inside:
            per_line[i] += 1
    assert set(per_line) == {7}


def test_flat_contains_agrees_with_point_sets():
    g = geo.make_geometry("EG", 3, 3)
    lines, planes = geo.enumerate_flats(g, 1), geo.enumerate_flats(g, 2)
    for pl in planes[::7]:
        pts = set(geo.flat_points(pl))
        for ln in lines[::5]:
            assert geo.flat_contains(pl, ln) == (set(geo.flat_points(ln)) <= pts)


def test_lookup_round_trip():
    g = geo.make_geometry("EG", 3, 4)
    for fl in geo.enumerate_flats(g, 1)[::13]:
        assert geo.lookup(g, [list(fl.basis[0])], list(fl.offset)).index == fl.index
    h = geo.make_geometry("PG", 2, 4)
    for fl in geo.enumerate_flats(h, 1)[::3]:
        assert geo.lookup(h, [list(v) for v in fl.basis]).index == fl.index


def test_parallel_bundles():
    g = geo.make_geometry("EG", 4, 2)
    bundles = geo.parallel_bundles(g, 3)
    assert len(bundles) == 15 and all(len(b.members) == 2 for b in bundles)
    g16 = geo.make_geometry("EG", 2, 16)
    b16 = geo.parallel_bundles(g16, 1)
    assert len(b16) == 17 and {len(b.members) for b in b16} == {16}
    flats = geo.enumerate_flats(g16, 1)
    for b in b16:
        pts = sorted(p for i in b.members for p in geo.flat_points(flats[i]))
        assert pts == list(range(256))
    # bundles occupy contiguous index ranges
    assert [i for b in b16 for i in b.members] == list(range(272))
    with pytest.raises(NotImplementedError):
        geo.parallel_bundles(geo.make_geometry("PG", 2, 2), 1)


def test_enumeration_is_deterministic():
    a = geo.enumerate_flats.__wrapped__(geo.make_geometry("PG", 2, 3), 1)
    b = geo.enumerate_flats.__wrapped__(geo.make_geometry("PG", 2, 3), 1)
    assert [f.key for f in a] == [f.key for f in b]


def test_invalid_arguments():
    with pytest.raises(ValueError):
        geo.make_geometry("XG", 2, 2)
    with pytest.raises(ValueError):
        geo.make_geometry("EG", 1, 2)
    with pytest.raises(ValueError):
        geo.enumerate_flats(geo.make_geometry("EG", 2, 2), 3)
    with pytest.raises(ValueError):
        geo.count_N(geo.make_geometry("EG", 2, 2), 1, 2)


@pytest.mark.parametrize("kind,r,q,mu1,mu2", [("EG", 2, 2, 0, 1), ("EG", 2, 3, 0, 1), ("PG", 2, 2, 0, 1), ("PG", 2, 3, 0, 1)])
def test_separation_lemmas(kind, r, q, mu1, mu2):
    g = geo.make_geometry(kind, r, q)
    assert lemma1_holds(g, mu1, mu2)
    assert lemma2_holds(g, mu1, mu2)
