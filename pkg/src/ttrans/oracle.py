"""Exact exponential-time solver used as ground truth on small graphs.

A partition of any of the three kinds is a chain of peels: starting from the
full vertex set, each part is removed from what remains.  ``depth[R]`` is the
largest number of peels after which exactly the set ``R`` is left.  Peeling
``D`` off ``R`` is legal when

* total / modified_total: every vertex of ``R`` has a neighbour in ``D``;
* transitive:             every vertex of ``R \\ D`` has a neighbour in ``D``.

The remainder may be kept as the last part when it totally dominates itself
(total) or is merely non-empty (the other two kinds).  The table is filled in
decreasing bitmask order, so each set is final before its subsets are reached;
the whole sweep touches every (set, subset) pair once, i.e. O(3^n).
"""

from __future__ import annotations

import os

import numpy as np
from numba import njit

from .errors import CeilingExceededError, InfeasibleError
from .graph import Graph, has_isolated_vertex, vertices_of
from .partition import Kind, VertexPartition

DEFAULT_CEILING = 16

_MODE_CODE = {Kind.TOTAL: 0, Kind.MODIFIED_TOTAL: 1, Kind.TRANSITIVE: 2}


def default_ceiling() -> int:
    env = os.environ.get("TTRANS_CEILING")
    return int(env) if env else DEFAULT_CEILING


@njit(cache=True)
def _peel_table(n, adj, mode):
    size = 1 << n
    full = size - 1
    nb = np.zeros(size, dtype=np.int64)
    for v in range(n):
        top = 1 << v
        for d in range(top, top << 1):
            nb[d] = nb[d - top] | adj[v]
    depth = np.full(size, -1, dtype=np.int32)
    pred = np.zeros(size, dtype=np.int64)
    depth[full] = 0
    for r in range(full, 0, -1):
        dr = depth[r]
        if dr < 0:
            continue
        d = (r - 1) & r
        while d > 0:
            if mode == 2:
                ok = ((r ^ d) & ~nb[d]) == 0
            else:
                ok = (r & ~nb[d]) == 0
            if ok:
                rest = r ^ d
                if dr + 1 > depth[rest]:
                    depth[rest] = dr + 1
                    pred[rest] = r
                elif dr + 1 == depth[rest] and d < (pred[rest] ^ rest):
                    pred[rest] = r
            d = (d - 1) & r
    return depth, pred, nb


@njit(cache=True)
def _vertex_best(n, depth, nb, mode):
    best = np.zeros(n, dtype=np.int32)
    size = 1 << n
    for r in range(1, size):
        dr = depth[r]
        if dr < 0:
            continue
        if mode == 0 and (r & ~nb[r]) != 0:
            continue
        val = dr + 1
        for v in range(n):
            if (r >> v) & 1 and val > best[v]:
                best[v] = val
    return best


class PeelDp:
    """Filled peel table for one graph and one partition kind."""

    def __init__(self, g: Graph, mode=Kind.TOTAL, ceiling: int | None = None):
        mode = Kind.parse(mode)
        ceiling = default_ceiling() if ceiling is None else ceiling
        if g.n == 0:
            raise InfeasibleError("empty graph")
        if g.n > ceiling:
            raise CeilingExceededError(f"n={g.n} exceeds the oracle ceiling {ceiling}")
        if g.n > 62:
            raise CeilingExceededError("the oracle works on 64-bit masks; n must be at most 62")
        if mode is Kind.TOTAL and has_isolated_vertex(g):
            raise InfeasibleError("total transitivity is undefined for graphs with isolated vertices")
        self.graph = g
        self.mode = mode
        adj = np.array(g.adj_bits, dtype=np.int64)
        self.depth, self.pred, self._nb = _peel_table(g.n, adj, _MODE_CODE[mode])

    def can_be_last(self, r: int) -> bool:
        if r == 0 or self.depth[r] < 0:
            return False
        if self.mode is Kind.TOTAL:
            return (r & ~int(self._nb[r])) == 0
        return True

    def best_last(self) -> int:
        """Smallest remaining-set mask that ends a longest chain."""
        best_r, best_val = 0, -1
        for r in range(1, 1 << self.graph.n):
            if self.can_be_last(r) and self.depth[r] > best_val:
                best_r, best_val = r, int(self.depth[r])
        return best_r

    def chain_to(self, r: int) -> VertexPartition:
        full = (1 << self.graph.n) - 1
        parts = [vertices_of(r)]
        cur = r
        while cur != full:
            prev = int(self.pred[cur])
            parts.append(vertices_of(prev ^ cur))
            cur = prev
        parts.reverse()
        return VertexPartition(parts, self.mode)

    def vertex_numbers(self) -> dict[int, int]:
        best = _vertex_best(self.graph.n, self.depth, self._nb, _MODE_CODE[self.mode])
        return {v: int(best[v]) for v in range(self.graph.n)}


def exact_value(g: Graph, mode=Kind.TOTAL, ceiling: int | None = None) -> tuple[int, VertexPartition]:
    """Maximum order of a partition of the given kind, with a witness partition."""
    dp = PeelDp(g, mode, ceiling)
    last = dp.best_last()
    cert = dp.chain_to(last)
    return cert.k, cert


def exact_vertex_numbers(g: Graph, mode=Kind.TOTAL, ceiling: int | None = None) -> dict[int, int]:
    """For every vertex, the highest part index it can occupy in a valid partition."""
    return PeelDp(g, mode, ceiling).vertex_numbers()
