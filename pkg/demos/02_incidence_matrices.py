"""
Incidence matrices as measurement matrices
==========================================

Type-I matrices put the larger flats on the rows; type-II matrices are
their transposes.  Both are regular, and the line-point matrices have no
4-cycles.
"""

from fgsense import analysis, geometry as geo, incidence

# planes over lines in EG(4, 2): a 30 x 120 type-I matrix
g = geo.make_geometry("EG", 4, 2)
H1 = incidence.build_incidence(g, 1, 3, type=1)
print(H1, "regular:", H1.is_regular(), "girth:", analysis.girth(H1))

# points over lines in PG(3, 4): an 85 x 357 type-II matrix
h = geo.make_geometry("PG", 3, 4)
H2 = incidence.build_incidence(h, 0, 1, type=2)
print(H2, "regular:", H2.is_regular(), "girth:", analysis.girth(H2))

# two distinct lines meet in at most one point, hence lambda = 1
print("gamma, lambda:", analysis.gamma_lambda(H2))

# matrices travel as plain-text BMM files
incidence.write_bmm(H2, "pg34.bmm")
print("read back equal:", incidence.read_bmm("pg34.bmm") == H2)
