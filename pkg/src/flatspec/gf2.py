"""GF(2) matrices on packed bit rows, and the modified adjacency matrix.

A quadratic has a flat spectrum under an {I,H,N} assignment iff its modified
adjacency matrix has full rank: I-vertices are deleted, N-vertices get a 1 on
the diagonal, H-vertices are left alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cache

import numpy as np

from .graph import Graph

KINDS = "IHN"


@dataclass(frozen=True)
class Gf2Matrix:
    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise ValueError("bits must hold one packed row per matrix row")
        full = (1 << self.cols) - 1
        if any(r & ~full for r in self.bits):
            raise ValueError("bits set outside the matrix columns")

    @classmethod
    def from_lists(cls, entries) -> Gf2Matrix:
        entries = [list(r) for r in entries]
        cols = len(entries[0]) if entries else 0
        bits = tuple(sum((int(v) & 1) << j for j, v in enumerate(r)) for r in entries)
        return cls(len(entries), cols, bits)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.cols)] for r in self.bits]


def rank(m: Gf2Matrix) -> int:
    work = list(m.bits)
    r = 0
    for col in range(m.cols):
        piv = next((i for i in range(r, len(work)) if work[i] >> col & 1), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i] >> col & 1:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def is_full_rank(m: Gf2Matrix) -> bool:
    """The 0x0 matrix counts as full rank."""
    return rank(m) == min(m.rows, m.cols)


def det(m: Gf2Matrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    return int(rank(m) == m.rows)


class TransformSet(enum.Enum):
    H = "h"
    HN = "hn"
    IH = "ih"
    IHN = "ihn"

    @property
    def alphabet(self) -> str:
        return self.name

    def size(self, n: int) -> int:
        return len(self.alphabet) ** n

    @classmethod
    def parse(cls, text) -> TransformSet:
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().strip("{}").replace(",", "")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown transform set {text!r}; use h, hn, ih or ihn") from None

    def __str__(self) -> str:
        return "{" + ",".join(self.alphabet) + "}"


@dataclass(frozen=True)
class TransformAssignment:
    """One kernel per variable, written as a string over ``I``, ``H``, ``N``."""

    kinds: str

    def __post_init__(self):
        bad = set(self.kinds) - set(KINDS)
        if bad:
            raise ValueError(f"assignment may only use I, H, N; got {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.kinds)

    def __str__(self) -> str:
        return self.kinds

    def mask(self, kind: str) -> int:
        return sum(1 << i for i, k in enumerate(self.kinds) if k == kind)

    @property
    def i_mask(self) -> int:
        return self.mask("I")

    @property
    def h_mask(self) -> int:
        return self.mask("H")

    @property
    def n_mask(self) -> int:
        return self.mask("N")

    def permuted(self, perm) -> TransformAssignment:
        """Assignment for the relabelled function where variable ``i`` becomes ``perm[i]``."""
        out = [""] * len(self.kinds)
        for i, k in enumerate(self.kinds):
            out[perm[i]] = k
        return TransformAssignment("".join(out))


@cache
def assignment_digits(n: int, tset: TransformSet) -> np.ndarray:
    """All assignments as an (count, n) array of kind codes 0=I, 1=H, 2=N.

    Row order is an odometer whose fastest digit is variable 0, with I < H < N.
    """
    allowed = np.array([KINDS.index(k) for k in tset.alphabet], dtype=np.uint8)
    base = len(allowed)
    idx = np.arange(base ** n, dtype=np.int64)
    digits = np.empty((base ** n, n), dtype=np.uint8)
    for i in range(n):
        digits[:, i] = allowed[(idx // base ** i) % base]
    digits.setflags(write=False)
    return digits


def iter_assignments(n: int, tset: TransformSet):
    for row in assignment_digits(n, tset):
        yield TransformAssignment("".join(KINDS[d] for d in row))


def modified_matrix(g: Graph, a: TransformAssignment) -> Gf2Matrix:
    if len(a) != g.n:
        raise ValueError(f"assignment length {len(a)} != vertex count {g.n}")
    keep = [i for i in range(g.n) if a.kinds[i] != "I"]
    bits = []
    for r, i in enumerate(keep):
        row = 0
        for c, j in enumerate(keep):
            if g.rows[i] >> j & 1 or (i == j and a.kinds[i] == "N"):
                row |= 1 << c
        bits.append(row)
    return Gf2Matrix(len(keep), len(keep), tuple(bits))


def is_flat_rank(g: Graph, a: TransformAssignment) -> bool:
    return is_full_rank(modified_matrix(g, a))


def _row_dtype(n: int):
    for dt in (np.uint8, np.uint16, np.uint32, np.uint64):
        if n <= np.dtype(dt).itemsize * 8:
            return dt
    raise ValueError(f"too many columns for packed rows: {n}")


def batch_rank(rows: np.ndarray, ncols: int) -> np.ndarray:
    """Rank of every matrix in a (batch, nrows) array of packed rows."""
    m = np.array(rows, copy=True)
    batch, nrows = m.shape
    out = np.zeros(batch, dtype=np.int64)
    if nrows == 0 or batch == 0:
        return out
    used = np.zeros((batch, nrows), dtype=bool)
    ar = np.arange(batch)
    one = m.dtype.type(1)
    for c in range(ncols):
        hit = ((m >> m.dtype.type(c)) & one).astype(bool)
        cand = hit & ~used
        has = cand.any(axis=1)
        piv = cand.argmax(axis=1)
        prow = m[ar, piv]
        hit[ar, piv] = False
        hit &= has[:, None]
        m ^= np.where(hit, prow[:, None], m.dtype.type(0))
        used[ar[has], piv[has]] = True
        out += has
    return out


def embedded_rows(g: Graph, digits: np.ndarray) -> np.ndarray:
    """Packed n x n matrices whose rank is rank(modified) + |R_I|.

    I-vertices are replaced by unit rows/columns instead of being deleted, so
    every assignment in a batch has the same shape.
    """
    digits = np.asarray(digits)
    n = g.n
    dt = _row_dtype(n)
    base = np.array(g.rows, dtype=dt)
    is_i = digits == 0
    is_n = digits == 2
    bit = (dt(1) << np.arange(n, dtype=dt)).astype(dt)
    i_cols = (is_i.astype(dt) * bit).sum(axis=1, dtype=np.uint64).astype(dt)
    m = np.broadcast_to(base, digits.shape).copy()
    m &= ~i_cols[:, None]
    m |= np.where(is_n, bit, dt(0))
    m = np.where(is_i, bit, m)
    return m.astype(dt)


def batch_nullity(g: Graph, digits: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """Nullity of the modified matrix for each assignment row in ``digits``."""
    digits = np.asarray(digits)
    out = np.empty(len(digits), dtype=np.int64)
    for s in range(0, len(digits), chunk):
        part = digits[s:s + chunk]
        out[s:s + chunk] = g.n - batch_rank(embedded_rows(g, part), g.n)
    return out
