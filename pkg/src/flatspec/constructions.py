"""Structured quadratics and their predicted flat-spectra counts.

Every count is produced by exact integer arithmetic (recurrences or rational
closed forms that are integers by construction); no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import comb

from .boolfunc import AnfPolynomial
from .gf2 import TransformSet

FAMILIES = ("line", "clique", "clc", "constant", "monomial")
_ALIASES = {"clique_line_clique": "clc", "path": "line", "complete": "clique"}


class FormulaError(ValueError):
    """No formula exists for this family/set pair or parameters."""


@dataclass(frozen=True)
class Family:
    kind: str
    n: int
    m: int | None = None

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; use one of {', '.join(FAMILIES)}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if kind == "clc":
            if self.m is None or self.m < 1:
                raise ValueError("clique-line-clique needs m >= 1")
        elif self.m is not None:
            raise ValueError(f"family {kind} takes no m parameter")

    @property
    def num_vars(self) -> int:
        return self.n + (self.m or 0)

    def __str__(self) -> str:
        return f"{self.kind}({self.n},{self.m})" if self.m is not None else f"{self.kind}({self.n})"


def build(fam: Family) -> AnfPolynomial:
    n, m = fam.n, fam.m
    if fam.kind == "line":
        return AnfPolynomial.from_terms(n, ((j, j + 1) for j in range(n - 1)))
    if fam.kind == "clique":
        return AnfPolynomial.from_terms(n, ((i, j) for i in range(n) for j in range(i + 1, n)))
    if fam.kind == "clc":
        terms = [(i, j) for i in range(n) for j in range(i + 1, n)]
        terms.append((n - 1, n))
        terms += [(i, j) for i in range(n, n + m) for j in range(i + 1, n + m)]
        return AnfPolynomial.from_terms(n + m, terms)
    if fam.kind == "constant":
        return AnfPolynomial(n, frozenset())
    return AnfPolynomial(n, frozenset({(1 << n) - 1}))


def _even(k: int) -> int:
    return 1 if k % 2 == 0 else 0


# --- line -----------------------------------------------------------------

@cache
def line_hn(n: int) -> int:
    """K_n = 2^n - K_{n-1}, K_0 = 1."""
    return 1 if n == 0 else (1 << n) - line_hn(n - 1)


@cache
def line_ih(n: int) -> int:
    """Fibonacci form, K_0 = K_1 = 1."""
    return 1 if n <= 1 else line_ih(n - 1) + line_ih(n - 2)


@cache
def line_ihn(n: int) -> int:
    """K_n = 2(K_{n-1} + K_{n-2}), K_0 = 1, K_1 = 2."""
    if n <= 1:
        return n + 1
    return 2 * (line_ihn(n - 1) + line_ihn(n - 2))


def line_hn_closed(n: int) -> int:
    num = (1 << (n + 1)) + (-1) ** n
    assert num % 3 == 0
    return num // 3


def hadamard_only(i: int) -> int:
    """Flat count of the line (or any path segment) under the single all-H transform."""
    return _even(i)


def line_ih_convolution(n: int) -> int:
    """K_n^{IH} = K_n^H + sum_i K^H_{n-1-i} K_i^{IH}, from the block factorization."""
    return hadamard_only(n) + sum(hadamard_only(n - 1 - i) * line_ih(i) for i in range(n))


def line_ihn_convolution(n: int) -> int:
    """Same split for {I,H,N}: the {H,N} count of the leading path block times the rest."""
    return line_hn(n) + sum(line_hn(n - 1 - i) * line_ihn(i) for i in range(n))


# --- clique ---------------------------------------------------------------

@cache
def clique_hn(n: int) -> int:
    """K_n = K_{n-1} + 1 + (-1)^n, K_0 = 1."""
    return 1 if n == 0 else clique_hn(n - 1) + 1 + (-1) ** n


def clique_hn_closed(n: int) -> int:
    return n + _even(n)


def clique_ih(n: int) -> int:
    return 1 << (n - 1)


@cache
def clique_ihn(n: int) -> int:
    """K_n = 2 K_{n-1} + 2^{n-1} for n >= 2, K_1 = 2; K_0 = 1 (empty clique)."""
    if n <= 1:
        return n + 1
    return 2 * clique_ihn(n - 1) + (1 << (n - 1))


def clique_ihn_closed(n: int) -> int:
    return (n + 1) << n >> 1


def clique_ihn_binomial(n: int) -> int:
    """Sum over the I-set size of C(n,i) times the {H,N} count of the leftover clique."""
    return sum(comb(n, i) * clique_hn(n - i) for i in range(n + 1))


# --- clique-line-clique ---------------------------------------------------

def clc_hn(n: int, m: int) -> int:
    en, em = _even(n), _even(m)
    return 3 * n * m - n * em - m * en + 3 * en * em


def _even_complements(k: int) -> int:
    """Subsets of a k-set whose complement has even size (1 for the empty set)."""
    return 1 << (k - 1) if k else 1


def _odd_complements(k: int) -> int:
    return 1 << (k - 1) if k else 0


def clc_ih(n: int, m: int) -> int:
    """{I,H} count by cases on the two bridge vertices.

    Neither bridge vertex fixed leaves a smaller clique-line-clique (bent iff its
    size is even); fixing one bridge vertex splits into two independent cliques.
    """
    if n + m < 4:
        raise FormulaError("clique-line-clique {I,H} formula needs n + m >= 4")
    free = _even_complements(n + m - 2)
    left_fixed = _even_complements(n - 1) * _even_complements(m)
    right_fixed = _odd_complements(n - 1) * _even_complements(m - 1)
    return free + left_fixed + right_fixed


def clc_ih_closed(n: int, m: int) -> int:
    """5 * 2^{n+m-4}; agrees with :func:`clc_ih` only for n, m >= 2."""
    return 5 << (n + m - 4)


def clc_ihn(n: int, m: int) -> int:
    """{I,H,N} count: a bridge vertex in R_I, or neither bridge vertex in R_I."""
    fixed = (clique_ihn(n - 1) * clique_ihn(m) + clique_ihn(n) * clique_ihn(m - 1)
             - clique_ihn(n - 1) * clique_ihn(m - 1))
    free = sum(comb(n - 1, i) * comb(m - 1, j) * clc_hn(n - i, m - j)
               for i in range(n) for j in range(m))
    return fixed + free


def clc_ihn_closed(n: int, m: int) -> int:
    """2^{n+m-3}(3nm + 2n + 2m + 2); agrees with :func:`clc_ihn` only for n, m >= 2."""
    val = 3 * n * m + 2 * n + 2 * m + 2
    e = n + m - 3
    if e < 0:
        if val % (1 << -e):
            raise FormulaError(f"closed form is not an integer at n={n}, m={m}")
        return val >> -e
    return val << e


# --- dispatch -------------------------------------------------------------

def predicted_count(fam: Family, tset) -> int:
    tset = TransformSet.parse(tset)
    kind, n, m = fam.kind, fam.n, fam.m
    table = {
        ("line", TransformSet.HN): lambda: line_hn(n),
        ("line", TransformSet.IH): lambda: line_ih(n),
        ("line", TransformSet.IHN): lambda: line_ihn(n),
        ("clique", TransformSet.HN): lambda: clique_hn(n),
        ("clique", TransformSet.IH): lambda: clique_ih(n),
        ("clique", TransformSet.IHN): lambda: clique_ihn(n),
        ("clc", TransformSet.HN): lambda: clc_hn(n, m),
        ("clc", TransformSet.IH): lambda: clc_ih(n, m),
        ("clc", TransformSet.IHN): lambda: clc_ihn(n, m),
        ("constant", TransformSet.IHN): lambda: 1 << n,
        ("monomial", TransformSet.IHN): lambda: _monomial_ihn(n),
    }
    try:
        fn = table[(kind, tset)]
    except KeyError:
        raise FormulaError(f"no formula for family {kind} under {tset}") from None
    return fn()


def _monomial_ihn(n: int) -> int:
    if n == 2:
        raise FormulaError("monomial formula excludes n = 2 (use the line formulas)")
    return n + 1


def supported_pairs() -> list[tuple[str, TransformSet]]:
    pairs = [(k, s) for k in ("line", "clique", "clc") for s in (TransformSet.HN, TransformSet.IH, TransformSet.IHN)]
    return pairs + [("constant", TransformSet.IHN), ("monomial", TransformSet.IHN)]
