"""
Against a Gaussian baseline
===========================

Keep the first seven parallel bundles of EG(2, 16) to get a 112 x 256
matrix, and compare it with an i.i.d. Gaussian matrix of the same size.
"""

from fgsense import geometry as geo, incidence
from fgsense.harness import ExperimentConfig, compare, gaussian_like

H = incidence.build_incidence(geo.make_geometry("EG", 2, 16), 0, 1, type=1)
H7 = incidence.select_row_bundles(H, 7)
print(H7, "column weight:", set(H7.column_weights().tolist()))

# trials kept small so the script runs in a few seconds
cfg = ExperimentConfig(H7, k_min=10, k_max=40, k_step=10, trials=100, seed=1)
paired = compare(cfg, gaussian_like(cfg))
print(paired.to_csv())
