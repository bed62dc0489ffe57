"""Named graph families, their known total-transitivity values, and the tcmbt gadget."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

FAMILIES = (
    "complete",
    "path",
    "cycle",
    "complete_bipartite",
    "star",
    "tcmbt",
    "figure1_split",
    "random_tree",
    "random_split",
)

NO_CLOSED_FORM = "no-closed-form"


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")


@dataclass
class Generated:
    graph: Graph
    root: int | None = None
    clique: tuple[int, ...] | None = None
    independent: tuple[int, ...] | None = None

    def metadata(self) -> dict:
        meta = {"n": self.graph.n, "m": self.graph.m}
        if self.root is not None:
            meta["root"] = self.root
        if self.clique is not None:
            meta["K"] = list(self.clique)
            meta["S"] = list(self.independent)
        return meta


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph(a + b, ((u, a + w) for u in range(a) for w in range(b)))


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    return complete_bipartite(1, leaves)


def tcmbt_size(k: int) -> int:
    if k < 1:
        raise ValueError("tcmbt order must be at least 1")
    sizes = [0, 2]
    for i in range(2, k + 1):
        sizes.append(2 + 2 * sum(sizes[1:i]))
    return sizes[k]


def _tcmbt_edges(k: int, root: int, next_id: list[int], edges: list[tuple[int, int]]) -> None:
    # vertex numbering: parents before children, children in definition order
    if k == 1:
        leaf = next_id[0]
        next_id[0] += 1
        edges.append((root, leaf))
        return
    vs = list(range(next_id[0], next_id[0] + k))
    next_id[0] += k
    for v in vs:
        edges.append((root, v))
    for i in range(1, k):
        _tcmbt_edges(i, vs[i - 1], next_id, edges)
    hub = vs[-1]
    us = list(range(next_id[0], next_id[0] + k - 1))
    next_id[0] += k - 1
    for u in us:
        edges.append((hub, u))
    for i in range(1, k):
        _tcmbt_edges(i, us[i - 1], next_id, edges)


def tcmbt(k: int) -> tuple[Graph, int]:
    """The order-``k`` minimum broadcast tree gadget; returns (tree, root) with root 0.

    The root has children ``v_1..v_k``; ``v_i`` (``i < k``) is itself the root of
    a copy of order ``i``, and ``v_k`` carries children ``u_1..u_{k-1}``, each the
    root of a copy of order ``i``.  Order 1 is a single edge.
    """
    if k < 1:
        raise ValueError("tcmbt order must be at least 1")
    edges: list[tuple[int, int]] = []
    next_id = [1]
    _tcmbt_edges(k, 0, next_id, edges)
    return Graph(next_id[0], edges), 0


def figure1_split(q: int) -> Generated:
    """Clique ``0..q-1``, each clique vertex ``i`` with a private pendant ``q + i``."""
    if q < 2:
        raise ValueError("figure1_split needs q >= 2")
    edges = [(u, v) for u in range(q) for v in range(u + 1, q)]
    edges += [(i, q + i) for i in range(q)]
    return Generated(Graph(2 * q, edges), clique=tuple(range(q)), independent=tuple(range(q, 2 * q)))


def prufer_decode(seq) -> list[tuple[int, int]]:
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    if n < 2:
        raise ValueError("random_tree needs n >= 2")
    rng = np.random.default_rng(seed)
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    return Graph(n, prufer_decode(seq))


def random_split(q: int, s: int, p_edge: float, seed: int) -> Generated:
    """Clique ``0..q-1`` plus independent ``q..q+s-1``; S-K edges drawn with ``p_edge``.

    An S-vertex that draws no clique neighbour redraws its whole row.
    """
    if q < 2 or s < 0:
        raise ValueError("random_split needs q >= 2 and s >= 0")
    if not 0.0 < p_edge <= 1.0:
        raise ValueError("p_edge must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(q) for v in range(u + 1, q)]
    for j in range(s):
        while True:
            row = rng.random(q) < p_edge
            if row.any():
                break
        edges.extend((int(k), q + j) for k in np.flatnonzero(row))
    return Generated(Graph(q + s, edges), clique=tuple(range(q)), independent=tuple(range(q, q + s)))


def _param(params, *names):
    for name in names:
        if name not in params or params[name] is None:
            raise ValueError(f"missing parameter {name!r}")
    return [params[name] for name in names]


def generate(spec: FamilySpec) -> Generated:
    p = spec.params
    f = spec.family
    if f == "complete":
        return Generated(complete(*_param(p, "n")))
    if f == "path":
        return Generated(path(*_param(p, "n")))
    if f == "cycle":
        return Generated(cycle(*_param(p, "n")))
    if f == "complete_bipartite":
        return Generated(complete_bipartite(*_param(p, "m", "n")))
    if f == "star":
        g = star(*_param(p, "n"))
        return Generated(g, root=0)
    if f == "tcmbt":
        g, root = tcmbt(*_param(p, "k"))
        return Generated(g, root=root)
    if f == "figure1_split":
        return figure1_split(*_param(p, "q"))
    if f == "random_tree":
        return Generated(random_tree(*_param(p, "n", "seed")))
    if f == "random_split":
        return random_split(*_param(p, "q", "s", "p_edge", "seed"))
    raise AssertionError(f)


def closed_form(spec: FamilySpec):
    """Known total transitivity of the family member, or NO_CLOSED_FORM.

    Paths on at most five vertices and the triangle have total transitivity 1:
    their leaves force the supports into the first part and nothing is left to
    form a self-dominating second part.
    """
    p = spec.params
    f = spec.family
    if f == "complete":
        (n,) = _param(p, "n")
        return n // 2
    if f == "path":
        (n,) = _param(p, "n")
        if n < 2:
            raise ValueError("P_1 has an isolated vertex")
        return 1 if n <= 5 else 2
    if f == "cycle":
        (n,) = _param(p, "n")
        return 1 if n == 3 else 2
    if f == "complete_bipartite":
        a, b = _param(p, "m", "n")
        return min(a, b)
    if f == "star":
        return 1
    if f == "tcmbt":
        (k,) = _param(p, "k")
        return k
    if f == "figure1_split":
        return 1
    return NO_CLOSED_FORM
