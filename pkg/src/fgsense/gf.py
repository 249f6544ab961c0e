"""Arithmetic in prime-power fields GF(p^m).

Elements are stored as integers ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``
where ``c_i`` is the coefficient of ``x^i`` in the polynomial basis.  The
integer value doubles as the canonical element order, so zero comes first
and enumeration is deterministic.

For fields with at most ``TABLE_LIMIT`` elements the full addition and
multiplication tables are precomputed; larger fields fall back to direct
polynomial arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field_create",
    "is_prime",
    "is_irreducible",
    "enumerate_elements",
    "TABLE_LIMIT",
]

TABLE_LIMIT = 1024
MAX_ORDER = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- polynomials over GF(p): coefficient lists, constant term first -------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by ``b`` over GF(p); ``b`` must be trimmed."""
    a = _poly_trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - factor * c) % p
        _poly_trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree in lexicographic order of
    their lower coefficients, low-degree coefficient compared first."""
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _poly_trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(d, p):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^m) together with its arithmetic.

    Instances are immutable; the lookup tables are built lazily and cached.
    """

    p: int
    m: int
    modulus: tuple[int, ...]  # m + 1 coefficients, constant term first, monic
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.m)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={self.modulus})"

    # -- conversions -------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of element ``a``, constant term first."""
        out = []
        for _ in range(self.m):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise ValueError(f"expected at most {self.m} coefficients")
        value = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise ValueError(f"coefficient {c} outside [0, {self.p - 1}]")
            value = value * self.p + c
        return value

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (tuple, list)):
            value = self.from_coeffs(value)
        self._check(value)
        return FieldElement(self, int(value))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    # -- scalar arithmetic on integer-encoded elements ------------------------

    def _check(self, *values: int) -> None:
        for v in values:
            if not 0 <= v < self.q:
                raise ValueError(f"{v} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs((x + y) % self.p for x, y in zip(ca, cb))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs((-x) % self.p for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return int(self.mul_table[a, b])
        return self._poly_mul(a, b)

    def _poly_mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, list(self.modulus), self.p)
        return self.from_coeffs(rem)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.q <= TABLE_LIMIT:
            return int(self.inv_table[a])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- tables ---------------------------------------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        coeffs = np.array([self.coeffs(a) for a in range(q)], dtype=np.int64)
        s = (coeffs[:, None, :] + coeffs[None, :, :]) % self.p
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        table = (s * weights).sum(axis=2)
        table.flags.writeable = False
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)
        table.flags.writeable = False
        return table

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        table = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                table[a, b] = table[b, a] = self._poly_mul(a, b)
        table.flags.writeable = False
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        table = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        table[rows] = cols
        table.flags.writeable = False
        return table


@dataclass(frozen=True)
class FieldElement:
    """An element of a particular field, with operator overloading."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.value
        return self.field.element(other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.field.q})<{self.value}>"


def field_create(p: int, m: int = 1) -> FieldSpec:
    """Build GF(p^m) using the lexicographically smallest monic irreducible
    modulus of degree ``m``.

    For ``m == 1`` the modulus is ``x`` and arithmetic is plain mod-p.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if not 1 <= m <= 16:
        raise ValueError(f"extension degree {m} outside [1, 16]")
    if p**m > MAX_ORDER:
        raise ValueError(f"field order {p}^{m} exceeds {MAX_ORDER}")
    for poly in _monic_polys(m, p):
        if is_irreducible(poly, p):
            return FieldSpec(p, m, tuple(poly))
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


def field_from_order(q: int) -> FieldSpec:
    """Field of order ``q`` where ``q`` is a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return field_create(p, m)


def enumerate_elements(f: FieldSpec) -> list[FieldElement]:
    """All ``q`` elements, zero first, in canonical order."""
    return [FieldElement(f, a) for a in range(f.q)]
