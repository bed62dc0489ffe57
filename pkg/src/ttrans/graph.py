"""Immutable simple graphs, rooted views of trees, and the edge-list text format.

Vertices are the dense integers ``0..n-1``.  Adjacency is kept twice: as sorted
neighbour tuples and as Python-int bitmasks (bit ``u`` of ``adj_bits[v]`` is set
iff ``uv`` is an edge), the latter being what the exact solvers iterate over.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphParseError, StructureError


class Graph:
    __slots__ = ("n", "adj", "adj_bits", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        bits = []
        for s in nbrs:
            b = 0
            for u in s:
                b |= 1 << u
            bits.append(b)
        self.adj_bits: tuple[int, ...] = tuple(bits)
        self._m = sum(len(s) for s in nbrs) // 2

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj_bits[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class RootedView:
    """A tree hung from ``root``.

    ``order`` lists every vertex after all of its children and ends at the root
    (reverse BFS order).
    """

    graph: Graph
    root: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]


def parse_edge_list(text: str) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphParseError("negative count in header", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphParseError(f"vertex id out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphParseError(f"self-loop at vertex {a}", lineno)
        edges.append((min(a, b), max(a, b)))
    if header is None:
        raise GraphParseError("missing 'n m' header")
    n, m = header
    distinct = sorted(set(edges))
    if len(distinct) != m:
        raise GraphParseError(f"header declares {m} edges but {len(distinct)} distinct edges follow")
    return Graph(n, distinct)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_edge_list(g))


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def has_isolated_vertex(g: Graph) -> bool:
    return any(not a for a in g.adj)


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def root_tree(g: Graph, root: int, reverse: bool = False) -> RootedView:
    """Root the tree ``g`` at ``root``.

    Neighbours are visited in ascending id order (descending with ``reverse``),
    which fixes the reverse BFS order.
    """
    if not is_tree(g):
        raise StructureError("graph is not a tree")
    if not 0 <= root < g.n:
        raise StructureError(f"root {root} out of range")
    parent: list[int | None] = [None] * g.n
    children: list[list[int]] = [[] for _ in range(g.n)]
    bfs = [root]
    seen = [False] * g.n
    seen[root] = True
    head = 0
    while head < len(bfs):
        x = bfs[head]
        head += 1
        nbrs = reversed(g.adj[x]) if reverse else g.adj[x]
        for y in nbrs:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                children[x].append(y)
                bfs.append(y)
    return RootedView(
        graph=g,
        root=root,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        order=tuple(reversed(bfs)),
    )


def two_coloring(g: Graph) -> list[int] | None:
    """Side (0/1) of every vertex in a proper 2-colouring, or None if not bipartite."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return side


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out
