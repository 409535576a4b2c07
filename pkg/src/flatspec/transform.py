"""Spectral oracle: tensor products of I, H and N applied to bipolar vectors.

Three independent ways of deciding flatness are provided:

* ``spectral`` -- apply the transform and look at every magnitude,
* ``rank``     -- GF(2) rank of the modified adjacency matrix (quadratics only),
* ``balance``  -- for every fixing of the I-variables, every derivative of the
  restriction plus the N-linear twist must be balanced.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .boolfunc import BooleanFunction, degree, function_to_anf, graph_of_quadratic
from .gf2 import (
    KINDS,
    TransformAssignment,
    TransformSet,
    assignment_digits,
    batch_nullity,
)
from .graph import Graph

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
METHODS = ("rank", "spectral", "balance")
MAX_BALANCE_VARS = 8

_S = 1 / np.sqrt(2)
KERNELS = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _S,
    "N": np.array([[1, 1j], [1, -1j]], dtype=complex) * _S,
}


class MethodError(ValueError):
    """The requested oracle cannot handle this function."""


@dataclass(frozen=True)
class Spectrum:
    n: int
    values: np.ndarray

    def power(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


@dataclass
class FlatCountReport:
    transform_set: TransformSet
    n: int
    assignments_total: int
    flat_count: int
    method: str
    flat_assignments: list[str] | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        out = {
            "transform_set": self.transform_set.value,
            "n": self.n,
            "assignments_total": self.assignments_total,
            "flat_count": self.flat_count,
            "method": self.method,
        }
        if self.flat_assignments is not None:
            out["flat_assignments"] = list(self.flat_assignments)
        return out


def bipolar(tables: np.ndarray) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(tables, dtype=np.float64)


def _butterfly(a: np.ndarray, n: int, i: int, kernel: np.ndarray) -> np.ndarray:
    """Apply a 2x2 kernel on bit ``i`` of the last axis (length 2^n)."""
    shape = a.shape
    v = a.reshape(shape[:-1] + (1 << (n - 1 - i), 2, 1 << i))
    x0 = v[..., 0, :]
    x1 = v[..., 1, :]
    out = np.stack((kernel[0, 0] * x0 + kernel[0, 1] * x1, kernel[1, 0] * x0 + kernel[1, 1] * x1), axis=-2)
    return out.reshape(shape)


def apply_transform(f: BooleanFunction, a: TransformAssignment) -> Spectrum:
    if len(a) != f.n:
        raise ValueError(f"assignment length {len(a)} != variable count {f.n}")
    v = bipolar(f.to_array()).astype(complex)
    for i, k in enumerate(a.kinds):
        if k != "I":
            v = _butterfly(v, f.n, i, KERNELS[k])
    return Spectrum(f.n, v)


def is_flat(s: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return bool(np.all(np.abs(np.abs(s.values) - 1.0) <= tol))


def spectral_flags(tables: np.ndarray, n: int, tset: TransformSet, tol: float = DEFAULT_TOL,
                   max_elems: int = 1 << 22) -> np.ndarray:
    """Flatness of each function (rows of ``tables``) under every assignment of ``tset``.

    Returns a (functions, assignments) bool array with columns in odometer order.
    Kernel choices for the low variables are enumerated one prefix at a time and
    the remaining variables are expanded breadth-first, sharing partial products.
    """
    tables = np.atleast_2d(np.asarray(tables))
    nf = tables.shape[0]
    alphabet = tset.alphabet
    base = len(alphabet)
    # number of high variables expanded breadth-first
    inner = 0
    while inner < n and nf * base ** (inner + 1) * (1 << n) <= max_elems:
        inner += 1
    outer = n - inner
    v0 = bipolar(tables).astype(complex)
    flags = np.empty((nf, base ** n), dtype=bool)
    for prefix in range(base ** outer):
        v = v0
        for i in range(outer):
            k = alphabet[prefix // base ** i % base]
            if k != "I":
                v = _butterfly(v, n, i, KERNELS[k])
        # leading axes: (var n-1, ..., var outer, function)
        for i in range(outer, n):
            parts = [v if k == "I" else _butterfly(v, n, i, KERNELS[k]) for k in alphabet]
            v = np.stack(parts, axis=0)
        ok = np.all(np.abs(np.abs(v) - 1.0) <= tol, axis=-1)
        ok = ok.reshape(base ** inner, nf)
        cols = prefix + base ** outer * np.arange(base ** inner)
        flags[:, cols] = ok.T
    return flags


def is_flat_balance(f: BooleanFunction, a: TransformAssignment) -> bool:
    if len(a) != f.n:
        raise ValueError(f"assignment length {len(a)} != variable count {f.n}")
    t = f.to_array()
    return _balance_ok(t, f.n, a.i_mask, a.n_mask)


def _parity(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    out = np.zeros_like(x)
    while x.any():
        out ^= x & 1
        x >>= 1
    return out


def _balance_ok(t: np.ndarray, n: int, i_mask: int, n_mask: int) -> bool:
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    free = (size - 1) & ~i_mask
    fiber = idx & i_mask
    half = 1 << (bin(free).count("1") - 1) if free else 0
    # enumerate every nonzero d supported on the free variables
    d = free
    while d:
        twist = _parity(idx & (d & n_mask)).astype(np.uint8)
        g = t ^ t[idx ^ d] ^ twist
        ones = np.bincount(fiber, weights=g, minlength=size)[np.unique(fiber)]
        if np.any(ones != half):
            return False
        d = (d - 1) & free
    return True


def _check_method(f: BooleanFunction, method: str) -> tuple[str, Graph | None]:
    if method not in METHODS:
        raise MethodError(f"unknown method {method!r}; use one of {', '.join(METHODS)}")
    if method == "rank":
        p = function_to_anf(f)
        if degree(p) > 2:
            raise MethodError(f"rank method needs degree <= 2, function has degree {degree(p)}")
        return method, graph_of_quadratic(p)
    if method == "balance" and f.n > MAX_BALANCE_VARS:
        raise MethodError(f"balance method is limited to n <= {MAX_BALANCE_VARS}")
    return method, None


def flat_flags(f: BooleanFunction, tset: TransformSet, method: str = "rank",
               tol: float = DEFAULT_TOL) -> np.ndarray:
    """Per-assignment flatness verdicts, in odometer order."""
    tset = TransformSet.parse(tset)
    method, g = _check_method(f, method)
    if method == "rank":
        return graph_flat_flags(g, tset)
    if method == "spectral":
        return spectral_flags(f.to_array()[None, :], f.n, tset, tol)[0]
    t = f.to_array()
    digits = assignment_digits(f.n, tset)
    weights = 1 << np.arange(f.n)
    i_masks = ((digits == 0) * weights).sum(axis=1)
    n_masks = ((digits == 2) * weights).sum(axis=1)
    return np.array([_balance_ok(t, f.n, int(im), int(nm)) for im, nm in zip(i_masks, n_masks)])


def graph_flat_flags(g: Graph, tset: TransformSet) -> np.ndarray:
    tset = TransformSet.parse(tset)
    return batch_nullity(g, assignment_digits(g.n, tset)) == 0


def _count_chunk(args) -> int:
    g, tset, lo, hi = args
    return int(np.count_nonzero(batch_nullity(g, assignment_digits(g.n, tset)[lo:hi]) == 0))


def count_flat_graph(g: Graph, tset: TransformSet, jobs: int = 1) -> int:
    """Flat count of the quadratic with graph ``g`` via the rank criterion."""
    tset = TransformSet.parse(tset)
    total = tset.size(g.n)
    if jobs <= 1 or total < 1 << 12:
        return _count_chunk((g, tset, 0, total))
    bounds = np.linspace(0, total, jobs + 1, dtype=np.int64)
    chunks = [(g, tset, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:])]
    with ProcessPoolExecutor(jobs) as ex:
        return sum(ex.map(_count_chunk, chunks))


def count_flat(f: BooleanFunction, tset, method: str = "rank", detail: bool = False,
               tol: float = DEFAULT_TOL, jobs: int = 1) -> FlatCountReport:
    tset = TransformSet.parse(tset)
    method, g = _check_method(f, method)
    total = tset.size(f.n)
    if method == "rank" and not detail:
        flat = count_flat_graph(g, tset, jobs)
        return FlatCountReport(tset, f.n, total, flat, method)
    flags = flat_flags(f, tset, method, tol)
    names = None
    if detail:
        digits = assignment_digits(f.n, tset)[flags]
        names = ["".join(KINDS[d] for d in row) for row in digits]
    return FlatCountReport(tset, f.n, total, int(np.count_nonzero(flags)), method, names)


def count_flat_many(tables: np.ndarray, n: int, tset, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Spectral flat counts for a batch of truth tables."""
    tset = TransformSet.parse(tset)
    tables = np.atleast_2d(tables)
    out = np.empty(len(tables), dtype=np.int64)
    step = max(1, (1 << 20) // (tset.size(n) << n))
    for s in range(0, len(tables), step):
        out[s:s + step] = spectral_flags(tables[s:s + step], n, tset, tol).sum(axis=1)
    return out


def assignment_index(a: TransformAssignment | str | Sequence[str], tset: TransformSet) -> int:
    """Position of ``a`` in the odometer order of ``tset``."""
    kinds = str(a) if not isinstance(a, str) else a
    alphabet = TransformSet.parse(tset).alphabet
    return sum(alphabet.index(k) * len(alphabet) ** i for i, k in enumerate(kinds))
