"""Local complementation, LC orbits, exhaustive maximum searches, GF(4) codes."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .boolfunc import AnfPolynomial, anf_to_function, format_anf, quadratic_of_graph
from .gf2 import TransformSet, assignment_digits, batch_rank
from .graph import Graph, vertex_pairs

log = logging.getLogger(__name__)

MAX_ORBIT_VARS = 12
MAX_DISTANCE_VARS = 20
MAX_KERNEL_VARS = 6
DEFAULT_QUADRATIC_MAX_N = 6


class GateError(ValueError):
    """A size gate or work budget would be exceeded."""


def local_complement(g: Graph, v: int) -> Graph:
    """Complement the edges inside the open neighbourhood of ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    return Graph(g.n, _lc_rows(g.rows, v))


def _lc_rows(rows: tuple[int, ...], v: int) -> tuple[int, ...]:
    nb = rows[v]
    out = list(rows)
    for u in range(len(rows)):
        if nb >> u & 1:
            out[u] ^= nb & ~(1 << u)
    return tuple(out)


def lc_orbit(g: Graph) -> list[Graph]:
    """All graphs reachable by local complementations, sorted by edge code."""
    if g.n > MAX_ORBIT_VARS:
        raise GateError(f"explicit LC orbits are limited to n <= {MAX_ORBIT_VARS}")
    seen = {g.rows}
    stack = [g.rows]
    while stack:
        rows = stack.pop()
        for v in range(g.n):
            if rows[v]:
                nxt = _lc_rows(rows, v)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return sorted((Graph(g.n, r) for r in seen), key=lambda h: h.code)


def _orbit_codes(g: Graph) -> list[int]:
    return [h.code for h in lc_orbit(g)]


# --- exhaustive quadratic search -----------------------------------------

def graph_rows_from_codes(n: int, codes: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    rows = np.zeros((len(codes), n), dtype=np.uint16 if n > 8 else np.uint8)
    for k, (i, j) in enumerate(vertex_pairs(n)):
        bit = ((codes >> k) & 1).astype(rows.dtype)
        rows[:, i] |= bit << rows.dtype.type(j)
        rows[:, j] |= bit << rows.dtype.type(i)
    return rows


def flat_counts_for_codes(n: int, codes: np.ndarray, tset: TransformSet, max_elems: int = 1 << 20) -> np.ndarray:
    """Rank-method flat counts of many graphs given by edge codes."""
    tset = TransformSet.parse(tset)
    digits = assignment_digits(n, tset)
    nas = len(digits)
    rows = graph_rows_from_codes(n, codes)
    dt = rows.dtype.type
    bit = (np.ones(n, dtype=dt) << np.arange(n, dtype=dt)).astype(dt)
    is_i = digits == 0
    i_cols = (is_i * bit).sum(axis=1).astype(dt)
    n_diag = np.where(digits == 2, bit, dt(0)).astype(dt)
    unit = np.where(is_i, bit, dt(0)).astype(dt)
    out = np.empty(len(rows), dtype=np.int64)
    step = max(1, max_elems // nas)
    for s in range(0, len(rows), step):
        part = rows[s:s + step]
        m = (part[:, None, :] & ~i_cols[None, :, None]) | n_diag[None]
        m = np.where(is_i[None], unit[None], m).astype(dt)
        full = batch_rank(m.reshape(-1, n), n) == n
        out[s:s + step] = full.reshape(len(part), nas).sum(axis=1)
    return out


@dataclass
class SearchResult:
    n: int
    degree: int
    transform_set: TransformSet
    max_count: int
    functions_examined: int
    maximizer_count: int
    orbits: list[list[int]] | None = None
    examples: list[str] = field(default_factory=list)
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def all_attain(self) -> bool:
        return self.maximizer_count == self.functions_examined

    def orbit_representatives(self) -> list[str]:
        if self.orbits is None:
            return list(self.examples)
        return [format_anf(quadratic_of_graph(Graph.from_code(self.n, o[0]))) for o in self.orbits]

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "degree": self.degree,
            "transform_set": self.transform_set.value,
            "max_count": self.max_count,
            "functions_examined": self.functions_examined,
            "maximizer_count": self.maximizer_count,
            "all_attain": self.all_attain,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }
        if self.orbits is not None:
            out["orbits"] = [
                {"representative": rep, "size": len(o)}
                for rep, o in zip(self.orbit_representatives(), self.orbits)
            ]
        else:
            out["examples"] = list(self.examples)
        return out


def _quadratic_chunk(args):
    n, tset, lo, hi = args
    codes = np.arange(lo, hi, dtype=np.int64)
    counts = flat_counts_for_codes(n, codes, tset)
    best = int(counts.max())
    vals, freq = np.unique(counts, return_counts=True)
    return best, codes[counts == best].tolist(), dict(zip(vals.tolist(), freq.tolist()))


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, total, parts + 1, dtype=np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run(fn, chunks, jobs):
    if jobs <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(jobs) as ex:
        return list(ex.map(fn, chunks))


def _merge(results):
    best = max(r[0] for r in results)
    hist: dict[int, int] = {}
    for r in results:
        for k, v in r[2].items():
            hist[k] = hist.get(k, 0) + v
    return best, hist


def search_quadratics(n: int, tset="ihn", max_n: int = DEFAULT_QUADRATIC_MAX_N, jobs: int = 1) -> SearchResult:
    """Maximum flat count over all 2^(n(n-1)/2) graphs, maximizers grouped by LC orbit.

    Affine terms never change a flat count, so graphs cover all quadratics.
    """
    tset = TransformSet.parse(tset)
    if n > max_n:
        raise GateError(f"quadratic search at n={n} exceeds the gate n <= {max_n}; raise it to override")
    total = 1 << (n * (n - 1) // 2)
    parts = max(jobs, -(-total // (1 << 12)))
    chunks = [(n, tset, lo, hi) for lo, hi in _split(total, parts)]
    results = _run(_quadratic_chunk, chunks, jobs)
    best, hist = _merge(results)
    maximizers = sorted(c for r in results if r[0] == best for c in r[1])
    remaining = set(maximizers)
    orbits = []
    for code in maximizers:
        if code not in remaining:
            continue
        orbit = _orbit_codes(Graph.from_code(n, code))
        remaining.difference_update(orbit)
        orbits.append(orbit)
    return SearchResult(n, 2, tset, best, total, len(maximizers), orbits=orbits, histogram=hist)


# --- exhaustive search over higher degree ---------------------------------

def _table_word(p: AnfPolynomial) -> np.uint64:
    f = anf_to_function(p)
    return np.uint64(sum(b << i for i, b in enumerate(f.table)))


def function_space(n: int, degree: int) -> tuple[list[int], list[int]]:
    """Monomial masks of the top degree and of the free middle degrees 2..degree-1."""
    top = [sum(1 << i for i in c) for c in combinations(range(n), degree)]
    mid = [sum(1 << i for i in c) for k in range(2, degree) for c in combinations(range(n), k)]
    return top, mid


def default_function_gate(n: int, degree: int) -> bool:
    return n <= 4 or (degree == n and n <= 5)


def search_work(n: int, degree: int, tset: TransformSet) -> int:
    top, mid = function_space(n, degree)
    return ((1 << len(top)) - 1) * (1 << len(mid)) * TransformSet.parse(tset).size(n)


def _masks(n: int, tset: TransformSet):
    d = assignment_digits(n, tset)
    w = 1 << np.arange(n)
    return ((d == 0) * w).sum(axis=1).astype(np.int64), ((d == 2) * w).sum(axis=1).astype(np.int64)


def _function_chunk(args):
    n, tset, top_code, top, mid, lo, hi, keep = args
    low, linear, fibers = _kernels.tables_for(n)
    i_masks, n_masks = _masks(n, tset)
    base = np.uint64(0)
    for k, mask in enumerate(top):
        if top_code >> k & 1:
            base ^= _table_word(AnfPolynomial(n, frozenset({mask})))
    monos = np.array([_table_word(AnfPolynomial(n, frozenset({m}))) for m in mid], dtype=np.uint64)
    if len(monos) == 0:
        monos = np.zeros(1, dtype=np.uint64)
    best, nbest, hist, found = _kernels.scan_gray(base, monos, lo, hi, n, low, linear, fibers,
                                                  i_masks, n_masks, keep)
    hist = {int(c): int(v) for c, v in enumerate(hist) if v}
    return int(best), int(nbest), hist, [(top_code, int(g)) for g in found]


def search_functions(n: int, degree: int, tset="ihn", budget: int | None = None, jobs: int = 1,
                     keep: int = 20) -> SearchResult:
    """Maximum flat count over all functions of exactly the given degree.

    Affine terms are left out of the enumeration since they never change a flat
    count. ``budget`` caps the work (functions x assignments); without it the
    default gate allows n <= 4, plus degree == n up to n = 5.
    """
    tset = TransformSet.parse(tset)
    if not 2 <= degree <= n:
        raise ValueError(f"degree must be in 2..{n}")
    if n > MAX_KERNEL_VARS:
        raise GateError(f"function search supports n <= {MAX_KERNEL_VARS}")
    work = search_work(n, degree, tset)
    if budget is None:
        if not default_function_gate(n, degree):
            raise GateError(f"degree-{degree} search at n={n} ({work:.3g} assignment checks) "
                            "is outside the default gate; pass an explicit budget")
    elif work > budget:
        raise GateError(f"search needs {work:.3g} assignment checks, budget is {budget:.3g}")
    top, mid = function_space(n, degree)
    span = 1 << len(mid)
    parts_per_top = max(1, -(-span // (1 << 20)))
    chunks = [(n, tset, tc, top, mid, lo, hi, keep)
              for tc in range(1, 1 << len(top))
              for lo, hi in _split(span, parts_per_top)]
    results = _run(_function_chunk, chunks, jobs)
    best = max(r[0] for r in results)
    hist: dict[int, int] = {}
    for r in results:
        for k, v in r[2].items():
            hist[k] = hist.get(k, 0) + v
    examples = []
    for r in results:
        if r[0] == best:
            for tc, g in r[3]:
                if len(examples) < keep:
                    masks = [m for k, m in enumerate(top) if tc >> k & 1] + [m for k, m in enumerate(mid) if g >> k & 1]
                    examples.append(format_anf(AnfPolynomial(n, frozenset(masks))))
    total = sum(hist.values())
    return SearchResult(n, degree, tset, best, total, hist[best], examples=examples, histogram=hist)


# --- GF(4)-additive codes -------------------------------------------------

GF4_SYMBOLS = ("0", "1", "w", "W")  # W = w^2 = w + 1


@dataclass(frozen=True)
class Gf4Generator:
    """Rows of Gamma + w*I; symbol (a, b) stands for a + b*w."""

    n: int
    ones: tuple[int, ...]
    omegas: tuple[int, ...]

    def symbol(self, i: int, j: int) -> str:
        return GF4_SYMBOLS[(self.ones[i] >> j & 1) | (self.omegas[i] >> j & 1) << 1]

    def rows(self) -> list[str]:
        return [" ".join(self.symbol(i, j) for j in range(self.n)) for i in range(self.n)]


def gf4_generator(g: Graph) -> Gf4Generator:
    return Gf4Generator(g.n, tuple(g.rows), tuple(1 << i for i in range(g.n)))


def code_distance(g: Graph) -> int:
    """Minimum symbol weight over nonzero GF(2)-combinations of the rows of Gamma + w*I."""
    if g.n > MAX_DISTANCE_VARS:
        raise GateError(f"code distance is limited to n <= {MAX_DISTANCE_VARS}")
    gen = gf4_generator(g)
    ones = np.zeros(1, dtype=np.uint32)
    omegas = np.zeros(1, dtype=np.uint32)
    for r1, rw in zip(gen.ones, gen.omegas):
        ones = np.concatenate((ones, ones ^ np.uint32(r1)))
        omegas = np.concatenate((omegas, omegas ^ np.uint32(rw)))
    weights = np.bitwise_count(ones | omegas)
    return int(weights[1:].min())
