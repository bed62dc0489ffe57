"""Bipartite instance built from a 3-colouring instance, and the two witness maps.

Given ``G`` with ``m`` edges, ``G'`` has a total partition of order ``k = m + 4``
exactly when ``G`` is 3-colourable.  Every gadget is an order-3 tcmbt attached
by its root.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ClaimViolation, PartitionStructureError, StructureError
from .families import tcmbt
from .graph import Graph, is_bipartite, is_connected
from .partition import Kind, VertexPartition, downsize, normalize_tail, validate

GADGET, _GADGET_ROOT = tcmbt(3)
GADGET_SIZE = GADGET.n

# Part index of gadget nodes 1..17 when the gadget root sits in part 1, 2 or 3.
# Obtained once from the tree solver's reconstruction and checked by the tests.
GADGET_PLACEMENT = {
    1: (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    2: (1, 2, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    3: (1, 2, 3, 1, 1, 2, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 1),
}

# Sizes stated alongside the original construction, kept for comparison only.
STATED_VERTICES = (40, 38, 116)  # a*m + b*n + c
STATED_EDGES = (1, 42, 34, 104)  # m^2 + a*m + b*n + c


def derived_counts(n: int, m: int) -> tuple[int, int]:
    """(n', m') of the instance built here."""
    gadgets = 2 * n + 2 * m + 6
    vertices = gadgets * GADGET_SIZE + 2 * m + 2
    edges = gadgets * GADGET.m + (m + 1) ** 2 + 6 * m + 6
    return vertices, edges


def stated_counts(n: int, m: int) -> tuple[int, int]:
    a, b, c = STATED_VERTICES
    sq, ea, eb, ec = STATED_EDGES
    return a * m + b * n + c, sq * m * m + ea * m + eb * n + ec


@dataclass
class ReductionOutput:
    source: Graph
    gprime: Graph
    k: int
    labels: list[str]
    index: dict[str, int] = field(repr=False)

    @property
    def counts(self) -> tuple[int, int]:
        return self.gprime.n, self.gprime.m

    def vertex(self, label: str) -> int:
        return self.index[label]

    def gadget_nodes(self, root_label: str) -> list[int]:
        return [self.index[f"gadget:{root_label}:node:{j}"] for j in range(1, GADGET_SIZE)]

    def sidecar(self) -> dict:
        n, m = self.source.n, self.source.m
        dn, dm = derived_counts(n, m)
        sn, sm = stated_counts(n, m)
        return {
            "k": self.k,
            "n": self.gprime.n,
            "m": self.gprime.m,
            "bipartite": is_bipartite(self.gprime),
            "derived_counts": {"n": dn, "m": dm, "formula_n": "38m+36n+110", "formula_m": "m^2+42m+34n+109"},
            "stated_counts": {"n": sn, "m": sm, "formula_n": "40m+38n+116", "formula_m": "m^2+42m+34n+104"},
            "delta": {"n": self.gprime.n - sn, "m": self.gprime.m - sm},
            "vertex_map": {label: i for i, label in enumerate(self.labels)},
        }


def gadget_roots(n: int, m: int) -> list[str]:
    roots = [f"v:{i}" for i in range(n)] + [f"v-prime:{i}" for i in range(n)]
    roots += [f"vedge:{t}" for t in range(m)] + [f"vedge-prime:{t}" for t in range(m)]
    roots += ["va", "va-prime", "ve", "ve-prime", "vb", "vb-prime"]
    return roots


def build(g: Graph) -> ReductionOutput:
    """Construct ``G'`` and ``k = m + 4``; edges of ``g`` are numbered in sorted order."""
    if g.n < 1 or g.m < 1:
        raise StructureError("the reduction needs at least one edge")
    src_edges = g.edges()
    m = len(src_edges)
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def add(label):
        index[label] = len(labels)
        labels.append(label)
        return index[label]

    for root in gadget_roots(g.n, m):
        ids = [add(root)] + [add(f"gadget:{root}:node:{j}") for j in range(1, GADGET_SIZE)]
        edges.extend((ids[a], ids[b]) for a, b in GADGET.edges())
    side_a = [add(f"edge:{t}") for t in range(m)] + [add("e")]
    side_b = [add(f"edge-prime:{t}") for t in range(m)] + [add("e-prime")]
    edges.extend((a, b) for a in side_a for b in side_b)
    for t, (i, j) in enumerate(src_edges):
        for plain, prime in ((f"v:{i}", f"v-prime:{i}"), (f"v:{j}", f"v-prime:{j}"),
                             (f"vedge:{t}", f"vedge-prime:{t}")):
            edges.append((index[plain], index[f"edge:{t}"]))
            edges.append((index[prime], index[f"edge-prime:{t}"]))
    for name in ("va", "ve", "vb"):
        edges.append((index[name], index["e"]))
        edges.append((index[f"{name}-prime"], index["e-prime"]))
    gp = Graph(len(labels), edges)
    out = ReductionOutput(g, gp, m + 4, labels, index)
    if not is_bipartite(gp):
        raise AssertionError("constructed instance is not bipartite")
    return out


def is_proper_coloring(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def _check_coloring(g: Graph, coloring) -> dict[int, int]:
    col = {int(v): int(c) for v, c in dict(coloring).items()}
    if set(col) != set(range(g.n)):
        raise ValueError("colouring must assign every vertex")
    if any(c not in (1, 2, 3) for c in col.values()):
        raise ValueError("colours must be 1, 2 or 3")
    for u, v in g.edges():
        if col[u] == col[v]:
            raise ValueError(f"colouring is not proper: edge ({u}, {v}) has colour {col[u]} twice")
    return col


def find_three_coloring(g: Graph) -> dict[int, int] | None:
    """Backtracking 3-colouring, vertices in index order; None when none exists."""
    col: dict[int, int] = {}

    def go(v):
        if v == g.n:
            return True
        for c in (1, 2, 3):
            if all(col.get(u) != c for u in g.adj[v]):
                col[v] = c
                if go(v + 1):
                    return True
                del col[v]
        return False

    return dict(col) if go(0) else None


def coloring_to_partition(r: ReductionOutput, coloring) -> VertexPartition:
    """Total partition of ``G'`` of order ``k`` from a proper 3-colouring of ``G``."""
    g = r.source
    col = _check_coloring(g, coloring)
    level: dict[int, int] = {}
    roots = {}
    for i in range(g.n):
        roots[f"v:{i}"] = roots[f"v-prime:{i}"] = col[i]
    for t, (i, j) in enumerate(g.edges()):
        spare = min({1, 2, 3} - {col[i], col[j]})
        roots[f"vedge:{t}"] = roots[f"vedge-prime:{t}"] = spare
        level[r.vertex(f"edge:{t}")] = level[r.vertex(f"edge-prime:{t}")] = 4 + t
    for name, p in (("va", 3), ("ve", 2), ("vb", 1)):
        roots[name] = roots[f"{name}-prime"] = p
    level[r.vertex("e")] = level[r.vertex("e-prime")] = r.k
    for root, p in roots.items():
        level[r.vertex(root)] = p
        for node, q in zip(r.gadget_nodes(root), GADGET_PLACEMENT[p]):
            level[node] = q
    parts = [[] for _ in range(r.k)]
    for v, p in level.items():
        parts[p - 1].append(v)
    out = VertexPartition(parts, Kind.TOTAL)
    violation = validate(r.gprime, out)
    if violation is not None:
        raise AssertionError(f"forward map produced an invalid partition: {violation}")
    return out


def partition_to_coloring(r: ReductionOutput, p: VertexPartition) -> dict[int, int]:
    """Read a proper 3-colouring of ``G`` off a total partition of ``G'`` of order >= k."""
    violation = validate(r.gprime, p, Kind.TOTAL)
    if violation is not None:
        raise PartitionStructureError(f"not a valid total partition: {violation}")
    if p.k < r.k:
        raise PartitionStructureError(f"partition has {p.k} parts, need at least k={r.k}")
    p = downsize(p.with_kind(Kind.TOTAL), r.k)
    if is_connected(r.gprime):
        p = normalize_tail(r.gprime, p)
    level = p.level_of()
    col = {}
    for i in range(r.source.n):
        v = r.vertex(f"v:{i}")
        if level[v] > 3:
            raise ClaimViolation(f"v:{i}", level[v])
        col[i] = level[v]
    if not is_proper_coloring(r.source, col):
        raise AssertionError("extracted colouring is not proper")
    return col
