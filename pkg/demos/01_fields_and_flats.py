"""
Finite fields and flats
=======================

Build GF(2^4), look at its elements, then enumerate the lines of the
Euclidean plane EG(2, 16) and split them into parallel bundles.
"""

from fgsense import geometry as geo
from fgsense.gf import enumerate_elements, field_from_order

# GF(16) is GF(2)[x] modulo a degree-4 irreducible; coefficients are
# listed constant term first
f = field_from_order(16)
print("modulus:", f.modulus)
elems = enumerate_elements(f)
print("first elements:", [e.coeffs for e in elems[:5]])

# every nonzero element has an inverse
x = elems[7]
print(f"{x.coeffs} * {x.inverse().coeffs} = {(x * x.inverse()).coeffs}")

# the plane EG(2, 16): 256 points and 272 lines
g = geo.make_geometry("EG", 2, 16)
lines = geo.enumerate_flats(g, 1)
print(f"{g}: {len(geo.enumerate_points(g))} points, {len(lines)} lines")

# lines sharing a direction form a parallel bundle that covers every point once
bundles = geo.parallel_bundles(g, 1)
print(f"{len(bundles)} bundles of {len(bundles[0].members)} lines each")
covered = sorted(p for i in bundles[0].members for p in geo.flat_points(lines[i]))
print("bundle 0 covers every point exactly once:", covered == list(range(256)))

# the closed-form counts agree with the enumeration
print("N(2,1) =", geo.count_N(g, 2, 1), " A(1,0) =", geo.count_A(g, 1, 0))
