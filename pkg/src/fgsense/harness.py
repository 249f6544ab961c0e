"""Monte-Carlo recovery experiments and proposed-vs-Gaussian comparisons.

Every trial draws from its own stream keyed by ``(seed, k, trial)``, so the
curve does not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .incidence import BinaryMatrix
from .recovery import gaussian_matrix, gen_sparse_signal, omp, rng_stream, score

__all__ = [
    "ExperimentConfig",
    "CurvePoint",
    "RecoveryCurve",
    "PairedCurve",
    "run_trial",
    "run_experiment",
    "compare",
    "gaussian_like",
    "k_grid",
]

log = logging.getLogger(__name__)

DEFAULT_TRIALS = 500


def k_grid(k_min: int, k_max: int, k_step: int = 1) -> list[int]:
    return list(range(k_min, k_max + 1, k_step))


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """One recovery curve: a matrix, a sparsity grid and a trial budget."""

    matrix: np.ndarray
    k_min: int = 1
    k_max: int = 1
    k_step: int = 1
    trials: int = DEFAULT_TRIALS
    seed: int = 1
    workers: int = 1
    label: str = ""

    def __post_init__(self):
        A = self.matrix.bits if isinstance(self.matrix, BinaryMatrix) else self.matrix
        A = np.ascontiguousarray(A, dtype=np.float64)
        A.flags.writeable = False
        object.__setattr__(self, "matrix", A)
        if self.k_min < 1 or self.k_step < 1 or self.trials < 1:
            raise ValueError("k_min, k_step and trials must all be at least 1")
        if self.k_max < self.k_min:
            raise ValueError(f"k_max={self.k_max} is below k_min={self.k_min}")
        if self.k_max > A.shape[0]:
            raise ValueError(f"k_max={self.k_max} exceeds the {A.shape[0]} measurements")

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def ks(self) -> list[int]:
        return k_grid(self.k_min, self.k_max, self.k_step)


@dataclass(frozen=True)
class CurvePoint:
    k: int
    trials: int
    successes: int

    @property
    def percent(self) -> float:
        return round(100.0 * self.successes / self.trials, 2)


@dataclass(frozen=True)
class RecoveryCurve:
    points: tuple[CurvePoint, ...]
    label: str = ""

    def percent(self, k: int) -> float:
        return next(p.percent for p in self.points if p.k == k)

    def to_csv(self) -> str:
        lines = ["k,trials,successes,percent"]
        lines += [f"{p.k},{p.trials},{p.successes},{p.percent:.2f}" for p in self.points]
        return "\n".join(lines) + "\n"

    def to_dat(self) -> str:
        """Two whitespace-separated columns, k and percent, for plotting."""
        return "".join(f"{p.k} {p.percent:.2f}\n" for p in self.points)


def run_trial(A: np.ndarray, k: int, trial: int, seed: int) -> bool:
    """One signal draw, measurement, OMP decode and 100 dB test."""
    rng = rng_stream(seed, "signal", k, trial)
    x = gen_sparse_signal(A.shape[1], k, rng).dense()
    return bool(score(omp(A, A @ x, k), x).success)


# worker-process state, set once by the pool initializer
_WORKER_MATRIX: np.ndarray | None = None


def _init_worker(A: np.ndarray) -> None:
    global _WORKER_MATRIX
    _WORKER_MATRIX = A


def _run_chunk(k: int, start: int, stop: int, seed: int) -> int:
    A = _WORKER_MATRIX
    return sum(run_trial(A, k, t, seed) for t in range(start, stop))


def _chunks(trials: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, trials, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def run_experiment(cfg: ExperimentConfig) -> RecoveryCurve:
    """Success counts of OMP at every k of the grid."""
    A = cfg.matrix
    points = []
    if cfg.workers <= 1:
        for k in cfg.ks:
            succ = sum(run_trial(A, k, t, cfg.seed) for t in range(cfg.trials))
            points.append(CurvePoint(k, cfg.trials, succ))
            log.debug("k=%d success=%d/%d", k, succ, cfg.trials)
        return RecoveryCurve(tuple(points), cfg.label)
    with ProcessPoolExecutor(max_workers=cfg.workers, initializer=_init_worker, initargs=(A,)) as pool:
        jobs = {
            k: [pool.submit(_run_chunk, k, a, b, cfg.seed) for a, b in _chunks(cfg.trials, cfg.workers)]
            for k in cfg.ks
        }
        for k in cfg.ks:
            points.append(CurvePoint(k, cfg.trials, sum(f.result() for f in jobs[k])))
    return RecoveryCurve(tuple(points), cfg.label)


def gaussian_like(cfg: ExperimentConfig, seed: int | None = None, label: str = "gaussian") -> ExperimentConfig:
    """Same grid and budget as ``cfg`` on an i.i.d. N(0, 1) matrix of the same size."""
    seed = cfg.seed if seed is None else seed
    m, n = cfg.shape
    G = gaussian_matrix(m, n, rng_stream(seed, "matrix"))
    return ExperimentConfig(G, cfg.k_min, cfg.k_max, cfg.k_step, cfg.trials, seed, cfg.workers, label)


@dataclass(frozen=True)
class PairedCurve:
    proposed: RecoveryCurve
    gaussian: RecoveryCurve

    def rows(self) -> list[tuple[int, float, float]]:
        return [(p.k, p.percent, g.percent) for p, g in zip(self.proposed.points, self.gaussian.points)]

    def to_csv(self) -> str:
        lines = ["k,percent_proposed,percent_gaussian"]
        lines += [f"{k},{a:.2f},{b:.2f}" for k, a, b in self.rows()]
        return "\n".join(lines) + "\n"


def compare(cfg: ExperimentConfig, cfg_gaussian: ExperimentConfig) -> PairedCurve:
    if cfg.shape != cfg_gaussian.shape:
        raise ValueError(f"matrix sizes differ: {cfg.shape} vs {cfg_gaussian.shape}")
    if cfg.ks != cfg_gaussian.ks:
        raise ValueError("sparsity grids differ")
    return PairedCurve(run_experiment(cfg), run_experiment(cfg_gaussian))
