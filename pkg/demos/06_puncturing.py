"""
Puncturing with parallel bundles
================================

Rows are removed a bundle at a time; columns are removed by deleting the
points covered by a few lines of the next unused bundle.  Column weights
stay uniform either way.
"""

from fgsense import geometry as geo, incidence

g = geo.make_geometry("EG", 2, 32)
H = incidence.build_incidence(g, 0, 1, type=1)

for count in (6, 8, 10, 12):
    S = incidence.select_row_bundles(H, count)
    print(f"{count} bundles -> {S.rows} x {S.cols}, column weight {set(S.column_weights().tolist())}")

H10 = incidence.select_row_bundles(H, 10)
nxt = geo.parallel_bundles(g, 1)[10]
for j in (0, 4, 8, 12):
    D = incidence.delete_covered_columns(H10, nxt, j)
    print(f"delete {j:2d} lines -> {D.rows} x {D.cols}, regular: {D.is_regular()}")
