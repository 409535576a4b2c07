"""Boolean functions: ANF polynomials, truth tables, and the digit-string notation.

Variable ``i`` is bit ``i`` of the truth-table index, so ``x0`` is the least
significant bit. Monomials are stored as integer bitmasks over the variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph

MAX_TABLE_VARS = 16
MAX_DIGIT_VARS = 10


class FormatError(ValueError):
    """Malformed monomial text."""


@dataclass(frozen=True)
class AnfPolynomial:
    n: int
    monomials: frozenset[int]
    constant: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_TABLE_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_TABLE_VARS}, got {self.n}")
        full = (1 << self.n) - 1
        for m in self.monomials:
            if m <= 0:
                raise ValueError("monomials must be nonempty")
            if m & ~full:
                raise ValueError(f"monomial {m:#b} uses a variable >= {self.n}")
        if self.constant not in (0, 1):
            raise ValueError("constant must be 0 or 1")

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Iterable[int]], constant: int = 0) -> AnfPolynomial:
        """Build from index collections; repeated monomials cancel mod 2."""
        masks: set[int] = set()
        for term in terms:
            mask = 0
            for i in term:
                mask |= 1 << i
            masks ^= {mask}
        return cls(n, frozenset(masks), constant)

    def terms(self) -> list[tuple[int, ...]]:
        """Monomials as sorted index tuples in lexicographic order."""
        out = [tuple(i for i in range(self.n) if m >> i & 1) for m in self.monomials]
        return sorted(out)

    def __str__(self) -> str:
        return format_anf(self)


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_TABLE_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_TABLE_VARS}, got {self.n}")
        if len(self.table) != 1 << self.n:
            raise ValueError(f"table length {len(self.table)} != 2^{self.n}")

    @classmethod
    def from_array(cls, n: int, arr) -> BooleanFunction:
        return cls(n, tuple(int(b) & 1 for b in np.asarray(arr).ravel()))

    def to_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.uint8)


def parse_anf(text: str, n: int) -> AnfPolynomial:
    """Parse comma-separated digit strings such as ``"02,13,23"``.

    Each token is one monomial; digits within a token must strictly increase.
    Surrounding whitespace is ignored and the empty string is the zero function.
    """
    if not 1 <= n <= MAX_DIGIT_VARS:
        raise FormatError(f"digit notation supports 1..{MAX_DIGIT_VARS} variables, got {n}")
    text = text.strip()
    if not text:
        return AnfPolynomial(n, frozenset())
    masks = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise FormatError(f"empty monomial in {text!r}")
        mask = 0
        last = -1
        for ch in token:
            if not ch.isdigit() or not ch.isascii():
                raise FormatError(f"unexpected character {ch!r} in {text!r}")
            i = int(ch)
            if i >= n:
                raise FormatError(f"variable {i} out of range for n={n}")
            if i == last or mask >> i & 1:
                raise FormatError(f"repeated variable {i} in monomial {token!r}")
            if i < last:
                raise FormatError(f"digits must increase within monomial {token!r}")
            mask |= 1 << i
            last = i
        if mask in masks:
            raise FormatError(f"duplicate monomial {token!r}")
        masks.add(mask)
    return AnfPolynomial(n, frozenset(masks))


def format_anf(p: AnfPolynomial) -> str:
    """Inverse of :func:`parse_anf` (the constant, if set, is written as ``1``)."""
    if p.n > MAX_DIGIT_VARS:
        tokens = ["*".join(f"x{i}" for i in t) for t in p.terms()]
    else:
        tokens = ["".join(str(i) for i in t) for t in p.terms()]
    if p.constant:
        tokens.insert(0, "1")
    return ",".join(tokens)


def mobius(table: np.ndarray, n: int) -> np.ndarray:
    """Binary Moebius transform; an involution, so it maps ANF<->truth table both ways."""
    a = np.array(table, dtype=np.uint8).reshape((2,) * n)
    for axis in range(n):
        lo = [slice(None)] * n
        hi = [slice(None)] * n
        lo[axis] = 0
        hi[axis] = 1
        a[tuple(hi)] ^= a[tuple(lo)]
    return a.reshape(-1)


def anf_to_function(p: AnfPolynomial) -> BooleanFunction:
    coeffs = np.zeros(1 << p.n, dtype=np.uint8)
    coeffs[0] = p.constant
    for m in p.monomials:
        coeffs[m] = 1
    return BooleanFunction.from_array(p.n, mobius(coeffs, p.n))


def function_to_anf(f: BooleanFunction) -> AnfPolynomial:
    coeffs = mobius(f.to_array(), f.n)
    monomials = frozenset(int(m) for m in np.flatnonzero(coeffs) if m)
    return AnfPolynomial(f.n, monomials, int(coeffs[0]))


def degree(p: AnfPolynomial) -> int:
    return max((bin(m).count("1") for m in p.monomials), default=0)


def graph_of_quadratic(p: AnfPolynomial) -> Graph:
    """Graph whose edges are the quadratic monomials; affine terms are dropped."""
    if degree(p) > 2:
        raise ValueError(f"graph requires degree <= 2, got degree {degree(p)}")
    edges = []
    for m in p.monomials:
        if bin(m).count("1") == 2:
            i = (m & -m).bit_length() - 1
            j = m.bit_length() - 1
            edges.append((i, j))
    return Graph.from_edges(p.n, edges)


def quadratic_of_graph(g: Graph) -> AnfPolynomial:
    return AnfPolynomial(g.n, frozenset((1 << i) | (1 << j) for i, j in g.edges()))
