"""Split graphs: recognition, clique domination of S, and structural checks for Tr_t.

A split graph has vertex set ``K + S`` with ``K`` a clique and ``S`` independent.
Everything here works with a decomposition whose ``K`` is a maximum clique, so
``omega = |K|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .errors import CapExceededError, InfeasibleError, NotSplitError
from .graph import Graph, has_isolated_vertex
from .partition import Kind, VertexPartition, validate

DOM_CAP = 20


@dataclass(frozen=True)
class SplitDecomposition:
    graph: Graph
    K: tuple[int, ...]
    S: tuple[int, ...]

    @property
    def omega(self) -> int:
        return len(self.K)

    def to_dict(self) -> dict:
        return {"K": list(self.K), "S": list(self.S), "omega": self.omega}


def _find_obstruction(g: Graph):
    for quad in combinations(range(g.n), 4):
        edges = [(a, b) for a, b in combinations(quad, 2) if g.has_edge(a, b)]
        degs = sorted(sum(v in e for e in edges) for v in quad)
        if len(edges) == 2 and degs == [1, 1, 1, 1]:
            return "2K2", quad
        if len(edges) == 4 and degs == [2, 2, 2, 2]:
            return "C4", quad
    for five in combinations(range(g.n), 5):
        edges = [(a, b) for a, b in combinations(five, 2) if g.has_edge(a, b)]
        if len(edges) == 5 and all(sum(v in e for e in edges) == 2 for v in five):
            return "C5", five
    raise AssertionError("degree test rejected a graph without a forbidden subgraph")


def decompose(g: Graph) -> SplitDecomposition:
    """Split partition with a maximum clique, via the degree-sequence test.

    Raises NotSplitError carrying an induced 2K2, C4 or C5.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    deg = [g.degree(v) for v in order]
    m = max(i for i in range(1, g.n + 1) if deg[i - 1] >= i - 1)
    if sum(deg[:m]) != m * (m - 1) + sum(deg[m:]):
        kind, witness = _find_obstruction(g)
        raise NotSplitError(kind, witness)
    K = set(order[:m])
    S = set(order[m:])
    kmask = sum(1 << v for v in K)
    for s in sorted(S):
        if g.adj_bits[s] & kmask == kmask:
            K.add(s)
            S.discard(s)
            break
    d = SplitDecomposition(g, tuple(sorted(K)), tuple(sorted(S)))
    _check_split(d)
    return d


def _check_split(d: SplitDecomposition) -> None:
    g = d.graph
    for a, b in combinations(d.K, 2):
        if not g.has_edge(a, b):
            raise ValueError(f"K is not a clique ({a}, {b})")
    for a, b in combinations(d.S, 2):
        if g.has_edge(a, b):
            raise ValueError(f"S is not independent ({a}, {b})")


def from_labels(g: Graph, K, S) -> SplitDecomposition:
    """Trust a given (K, S) labelling after checking it; K must be a maximum clique."""
    d = SplitDecomposition(g, tuple(sorted(K)), tuple(sorted(S)))
    if set(d.K) | set(d.S) != set(range(g.n)) or set(d.K) & set(d.S):
        raise ValueError("K and S must partition the vertex set")
    _check_split(d)
    kmask = sum(1 << v for v in d.K)
    if any(g.adj_bits[s] & kmask == kmask for s in d.S):
        raise ValueError("K is not a maximum clique")
    return d


def _k_mask(d: SplitDecomposition) -> int:
    return sum(1 << v for v in d.K)


def dominators(d: SplitDecomposition, size: int) -> list[tuple[int, ...]]:
    """All ``size``-subsets of K dominating S, in lexicographic order."""
    g = d.graph
    return [
        combo
        for combo in combinations(d.K, size)
        if all(g.adj_bits[s] & sum(1 << k for k in combo) for s in d.S)
    ]


def dom_K_S(d: SplitDecomposition):
    """Smallest subset of K dominating S as ``(size, witness)``; None if some s has no neighbour."""
    if not d.S:
        return 0, ()
    if d.omega > DOM_CAP:
        raise CapExceededError(f"|K|={d.omega} exceeds the enumeration cap {DOM_CAP}")
    g = d.graph
    if any(not g.adj_bits[s] for s in d.S):
        return None
    for size in range(1, d.omega + 1):
        found = dominators(d, size)
        if found:
            return size, found[0]
    return None


def bounds(d: SplitDecomposition) -> tuple[int, int]:
    if has_isolated_vertex(d.graph):
        raise InfeasibleError("graph has an isolated vertex")
    return 1, d.omega - 1


def _is_support(g: Graph, v: int) -> bool:
    return any(g.degree(u) == 1 for u in g.adj[v])


def ttr_eq_1_reason(d: SplitDecomposition) -> tuple[bool, str]:
    g = d.graph
    if has_isolated_vertex(g):
        raise InfeasibleError("graph has an isolated vertex")
    if not d.S:
        value = g.n // 2
        return value == 1, f"complete graph: total transitivity {value}"
    smask = sum(1 << s for s in d.S)
    bare = [k for k in d.K if not g.adj_bits[k] & smask]
    if len(bare) > 1:
        return False, f"clique vertices {bare[:2]} have no neighbour in S"
    for s in d.S:
        if g.degree(s) >= 2:
            for k in g.adj[s]:
                if not _is_support(g, k):
                    return False, f"neighbour {k} of S-vertex {s} is not a support vertex"
    if all(g.degree(s) == 1 for s in d.S):
        return True, "every S-vertex is pendant; at most one clique vertex lacks an S-neighbour"
    return True, "neighbours of non-pendant S-vertices are supports; at most one bare clique vertex"


def check_ttr_eq_1(d: SplitDecomposition) -> bool:
    return ttr_eq_1_reason(d)[0]


def _nested_order(g: Graph, R: tuple[int, ...], S: tuple[int, ...], spare: int):
    """Order ``R`` as k_2..k_{L+1} and pick distinct s_2..s_{L+1} with {k_2..k_i} inside N(s_i).

    ``spare`` more S-vertices must stay unused.  Returns (ks, ss) or None.
    """
    L = len(R)
    if len(S) < L + spare:
        return None
    nbr = {s: g.adj_bits[s] for s in S}

    def count(pmask):
        return sum(1 for s in S if nbr[s] & pmask == pmask)

    # reach[mask of positions in R]: the set can be the prefix {k_2..k_{|P|+1}}
    reach = {0: None}
    frontier = [0]
    for size in range(1, L + 1):
        nxt = []
        need = L + 1 - size
        for pm in frontier:
            for idx in range(L):
                bit = 1 << idx
                if pm & bit:
                    continue
                new = pm | bit
                if new in reach:
                    continue
                vmask = sum(1 << R[j] for j in range(L) if new >> j & 1)
                if count(vmask) >= need:
                    reach[new] = idx
                    nxt.append(new)
        frontier = nxt
    full = (1 << L) - 1
    if full not in reach:
        return None
    ks = []
    pm = full
    while pm:
        idx = reach[pm]
        ks.append(R[idx])
        pm ^= 1 << idx
    ks.reverse()
    used = set()
    ss = [None] * L
    for i in range(L - 1, -1, -1):
        pmask = sum(1 << k for k in ks[: i + 1])
        s = next(s for s in S if s not in used and nbr[s] & pmask == pmask)
        ss[i] = s
        used.add(s)
    return ks, ss


@dataclass
class OmegaMinusOneWitness:
    case: str  # "a", "b", "complete" or "omega2"
    dominators: tuple[int, ...] = ()
    pair: tuple[int, ...] = ()
    ks: tuple[int, ...] = ()
    ss: tuple[int, ...] = ()

    def partition(self, d: SplitDecomposition) -> VertexPartition | None:
        """The partition of order omega-1 this structure describes (None for bypass cases)."""
        if self.case not in ("a", "b"):
            return None
        upper = [[s, k] for s, k in zip(self.ss, self.ks)]
        if self.case == "a":
            upper.append(list(self.pair))
        placed = {v for part in upper for v in part}
        first = [v for v in range(d.graph.n) if v not in placed]
        return VertexPartition([first] + upper, Kind.TOTAL)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "dominators": list(self.dominators),
            "pair": list(self.pair),
            "order": list(self.ks),
            "s_vertices": list(self.ss),
        }


def ttr_eq_omega_minus_1_witness(d: SplitDecomposition) -> OmegaMinusOneWitness | None:
    """Structure certifying Tr_t = omega - 1, or None when none exists.

    (a) one clique vertex dominates S: it stays in V_1 with one S-neighbour, a
        clique pair takes the top part, and the other clique vertices are ordered
        as k_2.. with S-vertices s_i adjacent to all of k_2..k_i;
    (b) S needs two dominators: both stay in V_1 and every other clique vertex
        is ordered the same way.
    """
    g = d.graph
    if has_isolated_vertex(g):
        raise InfeasibleError("graph has an isolated vertex")
    q = d.omega
    if not d.S:
        return OmegaMinusOneWitness("complete") if g.n // 2 == q - 1 else None
    if q <= 2:
        # 1 <= Tr_t <= omega - 1 = 1
        return OmegaMinusOneWitness("omega2")
    dom = dom_K_S(d)
    if dom is None:
        return None
    size, _ = dom
    if size == 1:
        for (k1,) in dominators(d, 1):
            others = [k for k in d.K if k != k1]
            for pair in combinations(others, 2):
                R = tuple(k for k in others if k not in pair)
                found = _nested_order(g, R, d.S, spare=1)
                if found:
                    return OmegaMinusOneWitness("a", (k1,), pair, tuple(found[0]), tuple(found[1]))
        return None
    if size == 2:
        for dom_pair in dominators(d, 2):
            R = tuple(k for k in d.K if k not in dom_pair)
            found = _nested_order(g, R, d.S, spare=0)
            if found:
                return OmegaMinusOneWitness("b", dom_pair, (), tuple(found[0]), tuple(found[1]))
        return None
    return None


def check_ttr_eq_omega_minus_1(d: SplitDecomposition) -> bool:
    return ttr_eq_omega_minus_1_witness(d) is not None


class Necessary(NamedTuple):
    passes: bool
    reason: str


def _staircase(degrees: list[int], top: int, bottom: int) -> bool:
    """Distinct S-vertices with degree >= j for every j in bottom..top."""
    if top < bottom:
        return True
    ranked = sorted(degrees, reverse=True)
    need = list(range(top, bottom - 1, -1))
    if len(ranked) < len(need):
        return False
    return all(d >= t for d, t in zip(ranked, need))


def check_necessary(d: SplitDecomposition, p: int) -> Necessary:
    """Necessary conditions for Tr_t = p on a split graph."""
    q = d.omega
    if not 1 <= p <= max(q - 1, 1):
        raise ValueError(f"p must lie in 1..{q - 1}")
    g = d.graph
    if not d.S:
        value = g.n // 2
        return Necessary(p == value, f"complete graph: total transitivity is {value}")
    dom = dom_K_S(d)
    if dom is None:
        return Necessary(False, "some S-vertex has no clique neighbour")
    lmin, _ = dom
    degrees = [g.degree(s) for s in d.S]
    if lmin == 1:
        alpha = 2 * p - q
        if len(d.S) < alpha:
            return Necessary(False, f"|S|={len(d.S)} < 2p-q={alpha}")
        if not _staircase(degrees, alpha, 1):
            return Necessary(False, f"no S-vertices with degrees >= 1..{alpha}")
        return Necessary(True, f"dom_K(S)=1: |S| >= {alpha} and degree staircase 1..{alpha} present")
    beta = 2 * p - q + lmin - 2
    if len(d.S) < beta:
        return Necessary(False, f"|S|={len(d.S)} < 2p-q+l-2={beta}")
    if not _staircase(degrees, beta, 2):
        return Necessary(False, f"no S-vertices with degrees >= 2..{beta}")
    return Necessary(True, f"dom_K(S)={lmin}: |S| >= {beta} and degree staircase 2..{beta} present")


def thin_s_vertices(d: SplitDecomposition, p: VertexPartition) -> VertexPartition:
    """Move S-vertices out of parts 2..k into V_1, keeping one only where a part
    has a single clique vertex (it then needs an S-neighbour inside the part)."""
    g = d.graph
    kset = set(d.K)
    parts = [list(x) for x in p.parts]
    for idx in range(1, len(parts)):
        ks = [v for v in parts[idx] if v in kset]
        keep = []
        if len(ks) == 1:
            keep = [s for s in parts[idx] if s not in kset and g.has_edge(s, ks[0])][:1]
        moved = [v for v in parts[idx] if v not in kset and v not in keep]
        parts[0].extend(moved)
        parts[idx] = ks + keep
    return VertexPartition(parts, p.kind)


def observation_failures(d: SplitDecomposition, p: VertexPartition) -> list[str]:
    """Structural facts every total partition of a split graph obeys; returns the broken ones."""
    g = d.graph
    kset = set(d.K)
    sset = set(d.S)
    out = []
    for i, part in enumerate(p.parts, start=1):
        if not kset & set(part):
            out.append(f"part {i} has no clique vertex")
    if not out:
        thin = thin_s_vertices(d, p)
        if validate(g, thin) is not None:
            out.append("thinned partition is not valid")
        for i, part in enumerate(thin.parts[1:], start=2):
            if len(sset & set(part)) > 1:
                out.append(f"thinned part {i} keeps more than one S-vertex")
    first = set(p.parts[0])
    for s in d.S:
        if g.degree(s) == 1:
            if s not in first or g.adj[s][0] not in first:
                out.append(f"pendant S-vertex {s} or its support outside V_1")
    k1 = kset & first
    k1mask = sum(1 << k for k in k1)
    if not all(g.adj_bits[s] & k1mask for s in d.S):
        out.append("clique vertices of V_1 do not dominate S")
    if len(k1) > d.omega - p.k + 1:
        out.append(f"V_1 holds {len(k1)} > q-p+1 clique vertices")
    return out
