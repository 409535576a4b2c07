"""Interlace-polynomial evaluations built on the GF(2) rank engine.

q(x) = sum over vertex subsets S of (x-1)^nullity(Gamma[S]); q(1) counts the
flat spectra under {I,H}^n. Q is only exposed as a point evaluation,
sum over {I,H,N}^n assignments of (x-2)^nullity(modified matrix); at x = 2 it
counts flat spectra under {I,H,N}^n. Other x values use that sum as an
extrapolated definition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import TransformSet, assignment_digits, batch_nullity
from .graph import Graph
from .orbits import GateError

MAX_Q_POLY_VARS = 14
MAX_Q_EVAL_VARS = 10


@dataclass(frozen=True)
class IntPolynomial:
    """Integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else 0

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                coef = "" if c == 1 and k else "-" if c == -1 and k else f"{c}*" if k else f"{c}"
                terms.append(coef if k == 0 else f"{coef}x" if k == 1 else f"{coef}x^{k}")
        return " + ".join(reversed(terms)) or "0"


def _binomial_shift(nullity_counts: np.ndarray, shift: int) -> IntPolynomial:
    """sum_k count[k] * (x - shift)^k expanded into integer coefficients."""
    size = len(nullity_counts)
    coeffs = [0] * size
    for k, cnt in enumerate(nullity_counts):
        if not cnt:
            continue
        # (x - s)^k = sum_j C(k,j) x^j (-s)^{k-j}
        c = 1
        for j in range(k + 1):
            if j > 0:
                c = c * (k - j + 1) // j
            coeffs[j] += int(cnt) * c * (-shift) ** (k - j)
    return IntPolynomial(tuple(coeffs))


def q_poly(g: Graph) -> IntPolynomial:
    if g.n > MAX_Q_POLY_VARS:
        raise GateError(f"q is limited to n <= {MAX_Q_POLY_VARS}")
    # subsets S are exactly the {I,H} assignments with R_H = S
    nul = batch_nullity(g, assignment_digits(g.n, TransformSet.IH))
    return _binomial_shift(np.bincount(nul, minlength=g.n + 1), 1)


def Q_poly(g: Graph) -> IntPolynomial:
    """Assignment-nullity sum as a polynomial; only its value at 2 is a flat count."""
    if g.n > MAX_Q_EVAL_VARS:
        raise GateError(f"Q is limited to n <= {MAX_Q_EVAL_VARS}")
    nul = batch_nullity(g, assignment_digits(g.n, TransformSet.IHN))
    return _binomial_shift(np.bincount(nul, minlength=g.n + 1), 2)


def Q_eval(g: Graph, x: int) -> int:
    if g.n > MAX_Q_EVAL_VARS:
        raise GateError(f"Q is limited to n <= {MAX_Q_EVAL_VARS}")
    nul = batch_nullity(g, assignment_digits(g.n, TransformSet.IHN))
    counts = np.bincount(nul, minlength=g.n + 1)
    # 0^0 = 1
    return sum(int(c) * (x - 2) ** k for k, c in enumerate(counts))
