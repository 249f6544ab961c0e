"""Finite-geometry measurement matrices and the BMM text format.

A type-I matrix has one row per mu2-flat and one column per mu1-flat, with
a 1 wherever the row flat contains the column flat; type II is its
transpose.  Euclidean type-I rows come out grouped by parallel bundle, so
taking the first few bundles is a prefix slice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import (
    GeometrySpec,
    ParallelBundle,
    count_A,
    count_N,
    enumerate_flats,
    flats_within,
)

__all__ = [
    "Construction",
    "BinaryMatrix",
    "BMMFormatError",
    "TooLargeError",
    "build_incidence",
    "select_row_bundles",
    "delete_covered_columns",
    "transpose",
    "write_bmm",
    "read_bmm",
    "format_bmm",
    "parse_bmm",
]

MAX_BITS = 10**8


class TooLargeError(ValueError):
    """Raised when a requested computation exceeds a resource guard."""


class BMMFormatError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Construction:
    """How a matrix was built from a geometry.

    ``flat_bundles`` holds the parallel-bundle id of every mu2-flat that
    survives row selection (EG only).  ``kept_columns`` holds the original
    mu1-flat index of every surviving column after deletions.  Both are
    expressed in type-I orientation regardless of ``type``.
    """

    geom: GeometrySpec
    mu1: int
    mu2: int
    type: int
    flat_bundles: tuple[int, ...] | None = None
    selected_bundles: tuple[int, ...] | None = None
    kept_columns: tuple[int, ...] | None = None
    deleted_columns: tuple[int, ...] = ()

    @property
    def full(self) -> bool:
        """True when no rows or columns were punctured."""
        return self.selected_bundles is None and not self.deleted_columns


@dataclass(frozen=True, eq=False)
class BinaryMatrix:
    """Dense 0/1 matrix with optional construction record."""

    bits: np.ndarray
    meta: Construction | None = field(default=None)

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError("a binary matrix must be two-dimensional")
        if bits.size and bits.max() > 1:
            raise ValueError("entries must be 0 or 1")
        if bits.shape[1] and not bits.any(axis=0).all():
            zero = int(np.flatnonzero(~bits.any(axis=0))[0])
            raise ValueError(f"column {zero} is all zero")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    def column_weights(self) -> np.ndarray:
        return self.bits.sum(axis=0, dtype=np.int64)

    def row_weights(self) -> np.ndarray:
        return self.bits.sum(axis=1, dtype=np.int64)

    def is_regular(self) -> tuple[int, int] | None:
        """``(gamma, rho)`` when column and row weights are uniform."""
        cw, rw = self.column_weights(), self.row_weights()
        if cw.min() == cw.max() and rw.min() == rw.max():
            return int(cw[0]), int(rw[0])
        return None

    def __eq__(self, other):
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.shape, self.bits.tobytes()))

    def __array__(self, dtype=None, copy=None):
        return self.bits if dtype is None else self.bits.astype(dtype)

    def __repr__(self):
        tag = ""
        if self.meta is not None:
            tag = f", {self.meta.geom}, mu1={self.meta.mu1}, mu2={self.meta.mu2}, type {self.meta.type}"
        return f"BinaryMatrix({self.rows}x{self.cols}{tag})"


def build_incidence(g: GeometrySpec, mu1: int, mu2: int, type: int = 1) -> BinaryMatrix:
    """Incidence matrix of mu2-flats over mu1-flats (type I) or its transpose."""
    if not 0 <= mu1 < mu2 < g.r:
        raise ValueError(f"need 0 <= mu1 < mu2 < r, got mu1={mu1}, mu2={mu2}, r={g.r}")
    if type not in (1, 2):
        raise ValueError(f"type must be 1 or 2, got {type}")
    J, n = count_N(g, g.r, mu2), count_N(g, g.r, mu1)
    if J * n > MAX_BITS:
        raise TooLargeError(f"{J}x{n} incidence matrix exceeds {MAX_BITS} bits")
    rows = enumerate_flats(g, mu2)
    bits = np.zeros((J, n), dtype=np.uint8)
    for flat in rows:
        bits[flat.index, flats_within(flat, mu1)] = 1
    meta = Construction(
        g, mu1, mu2, 1,
        flat_bundles=tuple(f.bundle_id for f in rows) if g.is_euclidean else None,
    )
    H = BinaryMatrix(bits, meta)
    return transpose(H) if type == 2 else H


def transpose(H: BinaryMatrix) -> BinaryMatrix:
    meta = H.meta
    if meta is not None:
        meta = replace(meta, type=3 - meta.type)
    return BinaryMatrix(H.bits.T, meta)


def _require_eg_type1(H: BinaryMatrix) -> Construction:
    meta = H.meta
    if meta is None or meta.type != 1 or meta.flat_bundles is None:
        raise ValueError("operation needs a Euclidean type-I matrix with bundle metadata")
    return meta


def select_row_bundles(H: BinaryMatrix, count: int) -> BinaryMatrix:
    """Keep the rows of the first ``count`` parallel bundles."""
    meta = _require_eg_type1(H)
    order = list(dict.fromkeys(meta.flat_bundles))
    if not 1 <= count <= len(order):
        raise ValueError(f"bundle count {count} outside [1, {len(order)}]")
    keep = set(order[:count])
    rows = [i for i, b in enumerate(meta.flat_bundles) if b in keep]
    if count == len(order) and meta.selected_bundles is None:
        selected = None
    else:
        selected = tuple(order[:count])
    new_meta = replace(
        meta,
        flat_bundles=tuple(meta.flat_bundles[i] for i in rows),
        selected_bundles=selected,
    )
    return BinaryMatrix(H.bits[rows], new_meta)


def delete_covered_columns(H_b: BinaryMatrix, next_bundle: ParallelBundle, j: int) -> BinaryMatrix:
    """Drop the point columns covered by the first ``j`` lines of ``next_bundle``.

    Lines of one bundle are disjoint, so exactly ``j * q^mu2`` columns go.
    """
    meta = _require_eg_type1(H_b)
    if meta.mu1 != 0:
        raise ValueError("column deletion needs point columns (mu1 = 0)")
    if next_bundle.bundle_id in set(meta.flat_bundles):
        raise ValueError(f"bundle {next_bundle.bundle_id} is already among the rows")
    if not 0 <= j <= len(next_bundle.members):
        raise ValueError(f"j={j} outside [0, {len(next_bundle.members)}]")
    flats = enumerate_flats(meta.geom, meta.mu2)
    covered = set()
    for idx in next_bundle.members[:j]:
        covered.update(flats_within(flats[idx], 0))
    kept_orig = meta.kept_columns or tuple(range(H_b.cols))
    keep = [c for c, orig in enumerate(kept_orig) if orig not in covered]
    new_meta = replace(
        meta,
        kept_columns=tuple(kept_orig[c] for c in keep),
        deleted_columns=tuple(sorted(set(meta.deleted_columns) | covered)),
    )
    return BinaryMatrix(H_b.bits[:, keep], new_meta)


# --- BMM text format ---------------------------------------------------------------

def format_bmm(H: BinaryMatrix) -> str:
    lines = [f"BMM {H.rows} {H.cols}"]
    table = np.array([ord("0"), ord("1")], dtype=np.uint8)
    chars = table[H.bits]
    lines.extend(row.tobytes().decode("ascii") for row in chars)
    return "\n".join(lines) + "\n"


def write_bmm(H: BinaryMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(format_bmm(H))


def parse_bmm(text: str) -> BinaryMatrix:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise BMMFormatError("empty file", 1)
    parts = lines[0].split(" ")
    if len(parts) != 3 or parts[0] != "BMM" or not all(p.isdigit() for p in parts[1:]):
        raise BMMFormatError(f"malformed header {lines[0]!r}", 1)
    rows, cols = int(parts[1]), int(parts[2])
    if len(lines) - 1 != rows:
        raise BMMFormatError(f"expected {rows} rows, found {len(lines) - 1}", len(lines))
    bits = np.zeros((rows, cols), dtype=np.uint8)
    for i, line in enumerate(lines[1:]):
        lineno = i + 2
        if len(line) != cols:
            raise BMMFormatError(f"row has length {len(line)}, expected {cols}", lineno)
        if line.strip("01"):
            raise BMMFormatError("characters outside {0,1}", lineno)
        bits[i] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0")
    return BinaryMatrix(bits)


def read_bmm(path: str | os.PathLike) -> BinaryMatrix:
    with open(path, encoding="ascii", newline="") as fh:
        text = fh.read()
    if "\r" in text:
        raise BMMFormatError("CR characters are not allowed", text[: text.index("\r")].count("\n") + 1)
    return parse_bmm(text)
