import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fgsense.gf import enumerate_elements, field_create, field_from_order, is_irreducible, is_prime

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 32]


def _poly_mul_mod(a, b, mod, p):
    """Schoolbook product of coefficient lists (low degree first) reduced by ``mod``."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    m = len(mod) - 1
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
    return (prod + [0] * m)[:m]


@pytest.mark.parametrize("q", ORDERS)
def test_tables_match_polynomial_arithmetic(q):
    f = field_from_order(q)
    for a, b in itertools.product(range(q), repeat=2):
        ca, cb = list(f.coeffs(a)), list(f.coeffs(b))
        assert f.coeffs(f.add(a, b)) == tuple((x + y) % f.p for x, y in zip(ca, cb))
        assert list(f.coeffs(f.mul(a, b))) == _poly_mul_mod(ca, cb, list(f.modulus), f.p)


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_field_axioms_exhaustive(q):
    f = field_from_order(q)
    add, mul = f.add_table.astype(int), f.mul_table.astype(int)
    r = np.arange(q)
    assert (add[0] == r).all() and (mul[1] == r).all()
    assert (add == add.T).all() and (mul == mul.T).all()
    a, b, c = np.meshgrid(r, r, r, indexing="ij")
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    for x in range(1, q):
        assert mul[x, f.inv(x)] == 1
        assert add[x, f.neg(x)] == 0


def test_small_values():
    f7 = field_create(7)
    assert f7.inv(3) == 5
    assert [e.value for e in enumerate_elements(field_create(2))] == [0, 1]
    assert field_from_order(16).modulus == (1, 0, 0, 1, 1)
    assert field_from_order(9).modulus == (1, 0, 1)


def test_modulus_is_smallest_irreducible():
    f = field_from_order(8)
    assert is_irreducible(list(f.modulus), 2)
    # comparing low-degree coefficients first, 1 + x^2 + x^3 precedes 1 + x + x^3
    assert f.modulus == (1, 0, 1, 1)
    for low in [(0, 0, 0), (1, 0, 0)]:
        assert not is_irreducible(list(low) + [1], 2)


def test_multiplicative_group_is_cyclic():
    f = field_from_order(32)
    orders = set()
    for a in range(1, 32):
        e, x = 1, a
        while x != 1:
            x, e = f.mul(x, a), e + 1
        orders.add(e)
    assert 31 in orders


def test_creation_is_deterministic():
    a, b = field_create(2, 5), field_create(2, 5)
    assert a == b
    assert (a.mul_table == b.mul_table).all()


def test_errors():
    with pytest.raises(ValueError):
        field_create(6)
    with pytest.raises(ValueError):
        field_from_order(12)
    with pytest.raises(ZeroDivisionError):
        field_create(5).inv(0)
    assert not is_prime(1) and is_prime(31)


def test_element_operators():
    f = field_from_order(9)
    x, y = f.element(4), f.element(7)
    assert (x * y) / y == x
    assert x + (-x) == f.element(0)
    assert x * x.inverse() == f.element(1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORDERS), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_distributive_property(q, a, b, c):
    f = field_from_order(q)
    a, b, c = a % q, b % q, c % q
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    if b:
        assert f.mul(f.div(a, b), b) == a


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7, 8, 9, 16]), st.integers(1, 10**6))
def test_fermat(q, a):
    f = field_from_order(q)
    a = a % q or 1
    assert f.pow(a, q - 1) == 1
