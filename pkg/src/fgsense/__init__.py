"""Binary compressed-sensing matrices from finite geometries.

Build incidence matrices of EG(r, q) and PG(r, q), bound and compute their
spark, and measure OMP recovery against Gaussian baselines.
"""

from .analysis import (
    analyze,
    bound_chain_check,
    coherence,
    exact_spark,
    gamma_lambda,
    girth,
    spark_lower_bounds,
    stopping_distance,
)
from .geometry import (
    GeometrySpec,
    count_A,
    count_N,
    enumerate_flats,
    enumerate_points,
    flat_contains,
    flats_within,
    make_geometry,
    parallel_bundles,
)
from .gf import FieldSpec, enumerate_elements, field_create
from .harness import ExperimentConfig, compare, gaussian_like, run_experiment
from .incidence import (
    BinaryMatrix,
    build_incidence,
    delete_covered_columns,
    read_bmm,
    select_row_bundles,
    transpose,
    write_bmm,
)
from .recovery import gaussian_matrix, gen_sparse_signal, l0_oracle, omp, rng_stream, snr_rec

__version__ = "0.1.0"
