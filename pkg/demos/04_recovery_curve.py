"""
OMP recovery curves
===================

Measure sparse signals with the 85 x 357 projective matrix, decode with
orthogonal matching pursuit, and count exact (>= 100 dB) recoveries.
"""

import numpy as np

from fgsense import geometry as geo, incidence
from fgsense.harness import ExperimentConfig, run_experiment
from fgsense.recovery import gen_sparse_signal, omp, rng_stream, score

H = incidence.build_incidence(geo.make_geometry("PG", 3, 4), 0, 1, type=2)
A = H.bits.astype(float)

# a single decode, step by step
x = gen_sparse_signal(A.shape[1], 6, rng_stream(1, "signal", 6, 0)).dense()
res = score(omp(A, A @ x, 6), x)
print("support:", res.support, "SNR (dB):", round(res.snr_db, 1), "success:", res.success)
print("residual history:", np.round(res.residual_history, 3))

# a full curve; every (k, trial) pair has its own random stream
curve = run_experiment(ExperimentConfig(H, k_min=5, k_max=25, k_step=5, trials=200, seed=1))
print(curve.to_csv())
