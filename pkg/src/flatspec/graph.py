"""Simple undirected graphs stored as adjacency bitmask rows."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if r >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            for j in range(self.n):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for i, j in edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad edge ({i}, {j}) for n={n}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_code(cls, n: int, code: int) -> Graph:
        """Inverse of :attr:`code`: bit k selects the k-th pair of :func:`vertex_pairs`."""
        return cls.from_edges(n, (e for k, e in enumerate(vertex_pairs(n)) if code >> k & 1))

    @property
    def code(self) -> int:
        """Integer edge encoding, used for enumeration and canonical ordering."""
        out = 0
        for k, (i, j) in enumerate(vertex_pairs(self.n)):
            if self.rows[i] >> j & 1:
                out |= 1 << k
        return out

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in vertex_pairs(self.n) if self.rows[i] >> j & 1]

    def neighbors(self, v: int) -> list[int]:
        return [j for j in range(self.n) if self.rows[v] >> j & 1]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``i`` renamed to ``perm[i]``."""
        return Graph.from_edges(self.n, ((perm[i], perm[j]) for i, j in self.edges()))

    def matrix(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]


@cache
def vertex_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, vertex_pairs(n))
