"""Directed graphs given by adjacency matrices, and the structural checks
(constant outdegree, strong connectivity, period, positivity exponent).

Sites are labelled ``1..m``.  Following the column convention used
throughout the package, ``adjacency[y-1][x-1]`` counts the roads
running *from* ``x`` *to* ``y``; a column sum is therefore an outdegree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import InputError, StructureError

__all__ = [
    "DirectedGraph",
    "GraphProperties",
    "validate_outdegree",
    "is_strongly_connected",
    "period",
    "positivity_exponent",
    "check_assumption_A",
    "cyclic_classes",
]


@dataclass(frozen=True)
class DirectedGraph:
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.adjacency)
        object.__setattr__(self, "adjacency", rows)
        m = len(rows)
        if m < 1:
            raise InputError("graph must have at least one site")
        for y, row in enumerate(rows, 1):
            if len(row) != m:
                raise InputError(f"adjacency row {y} has {len(row)} entries, expected {m}")
            for v in row:
                if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                    raise InputError(f"adjacency entries must be integers, got {v!r}")
                if v < 0:
                    raise InputError(f"negative adjacency entry {v} in row {y}")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "DirectedGraph":
        return cls(tuple(tuple(int(v) for v in row) for row in matrix))

    @property
    def m(self) -> int:
        return len(self.adjacency)

    def entry(self, y: int, x: int) -> int:
        """Number of roads from site ``x`` to site ``y`` (1-based)."""
        return self.adjacency[y - 1][x - 1]

    def out_neighbors(self, x: int) -> list[int]:
        return [y for y in range(1, self.m + 1) if self.adjacency[y - 1][x - 1] > 0]

    def outdegree(self, x: int) -> int:
        return sum(self.adjacency[y][x - 1] for y in range(self.m))

    def as_array(self) -> np.ndarray:
        return np.array(self.adjacency, dtype=np.int64)

    def relabel(self, perm: Sequence[int]) -> "DirectedGraph":
        """Graph with site ``x`` renamed ``perm[x-1]``."""
        m = self.m
        out = [[0] * m for _ in range(m)]
        for y in range(m):
            for x in range(m):
                out[perm[y] - 1][perm[x] - 1] = self.adjacency[y][x]
        return DirectedGraph.from_matrix(out)


@dataclass(frozen=True)
class GraphProperties:
    outdegree: Optional[int]
    strongly_connected: bool
    period: Optional[int]
    aperiodic: bool
    positivity_exponent: Optional[int]

    @property
    def assumption_A(self) -> bool:
        return self.outdegree is not None and self.strongly_connected and self.aperiodic


def validate_outdegree(g: DirectedGraph) -> Optional[int]:
    """Common column sum ``d >= 1``, or ``None`` if columns disagree."""
    degs = {g.outdegree(x) for x in range(1, g.m + 1)}
    if len(degs) == 1:
        d = degs.pop()
        return d if d >= 1 else None
    return None


def _reachable(g: DirectedGraph, start: int, reverse: bool = False) -> set[int]:
    seen = {start}
    queue = deque([start])
    m = g.m
    while queue:
        u = queue.popleft()
        for v in range(1, m + 1):
            count = g.adjacency[u - 1][v - 1] if reverse else g.adjacency[v - 1][u - 1]
            if count and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def is_strongly_connected(g: DirectedGraph) -> bool:
    everything = set(range(1, g.m + 1))
    if _reachable(g, 1) != everything or _reachable(g, 1, reverse=True) != everything:
        return False
    # a single site needs a self-loop to satisfy A^n(1,1) >= 1 for some n >= 1
    return g.m > 1 or g.adjacency[0][0] > 0


def _bfs_levels(g: DirectedGraph) -> list[int]:
    level = [-1] * (g.m + 1)
    level[1] = 0
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for v in g.out_neighbors(u):
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def period(g: DirectedGraph) -> int:
    """Period of a strongly connected graph.

    Uses BFS levels from site 1: the gcd of ``level(x) + 1 - level(y)`` over
    all roads ``x -> y`` equals the gcd of closed-walk lengths at any site.
    """
    if not is_strongly_connected(g):
        raise StructureError("period is only defined for strongly connected graphs")
    level = _bfs_levels(g)
    d = 0
    for x in range(1, g.m + 1):
        for y in g.out_neighbors(x):
            d = gcd(d, level[x] + 1 - level[y])
    return abs(d)


def cyclic_classes(g: DirectedGraph) -> list[list[int]]:
    """Sites grouped by BFS distance from site 1 modulo the period.

    Class 0 contains site 1; every road leaves class ``i`` for class
    ``i + 1 (mod d)``.
    """
    d = period(g)
    level = _bfs_levels(g)
    parts: list[list[int]] = [[] for _ in range(d)]
    for x in range(1, g.m + 1):
        parts[level[x] % d].append(x)
    return parts


def positivity_exponent(g: DirectedGraph) -> Optional[int]:
    """Least ``r`` with every entry of ``A^r`` positive, or ``None``.

    The search stops at ``m^2 + m``, which exceeds Wielandt's bound
    ``(m-1)^2 + 1`` for primitive matrices.
    """
    m = g.m
    base = g.as_array() > 0
    power = base.copy()
    cap = m * m + m
    for r in range(1, cap + 1):
        if power.all():
            return r
        power = (power.astype(np.int64) @ base.astype(np.int64)) > 0
    return None


def check_assumption_A(g: DirectedGraph) -> GraphProperties:
    d = validate_outdegree(g)
    sc = is_strongly_connected(g)
    per = period(g) if sc else None
    aperiodic = per == 1
    r = None
    if sc and aperiodic:
        r = positivity_exponent(g)
        if r is None:
            raise RuntimeError("primitive graph exceeded the positivity-exponent cap")
    return GraphProperties(
        outdegree=d,
        strongly_connected=sc,
        period=per,
        aperiodic=aperiodic,
        positivity_exponent=r,
    )
