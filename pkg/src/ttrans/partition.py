"""Ordered vertex partitions and the three domination rules that make them valid.

Every rule is checked per vertex: a vertex sitting in part ``l`` (1-based) needs
a neighbour in each part ``i`` it must be dominated by.

* total:          every ``i <= l``
* modified_total: every ``i < l``, plus ``i = l`` unless ``l`` is the last part
* transitive:     every ``i < l``
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InfeasibleError, PartitionStructureError
from .graph import Graph, has_isolated_vertex, is_connected


class Kind(str, enum.Enum):
    TOTAL = "total"
    MODIFIED_TOTAL = "modified_total"
    TRANSITIVE = "transitive"

    @classmethod
    def parse(cls, value) -> "Kind":
        if isinstance(value, Kind):
            return value
        aliases = {"modified": cls.MODIFIED_TOTAL, "modified-total": cls.MODIFIED_TOTAL}
        if value in aliases:
            return aliases[value]
        return cls(value)


@dataclass(frozen=True)
class VertexPartition:
    parts: tuple[tuple[int, ...], ...]
    kind: Kind = Kind.TOTAL

    def __init__(self, parts: Iterable[Iterable[int]], kind=Kind.TOTAL):
        object.__setattr__(self, "parts", tuple(tuple(sorted(p)) for p in parts))
        object.__setattr__(self, "kind", Kind.parse(kind))
        if not self.parts:
            raise PartitionStructureError("a partition needs at least one part")
        for i, p in enumerate(self.parts, start=1):
            if not p:
                raise PartitionStructureError(f"part {i} is empty")

    @property
    def k(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def level_of(self) -> dict[int, int]:
        """Map vertex -> 1-based index of its part."""
        return {v: i for i, p in enumerate(self.parts, start=1) for v in p}

    def with_kind(self, kind) -> "VertexPartition":
        return VertexPartition(self.parts, kind)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "parts": [list(p) for p in self.parts]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc) -> "VertexPartition":
        if not isinstance(doc, dict) or "parts" not in doc:
            raise PartitionStructureError("partition document needs a 'parts' list")
        parts = doc["parts"]
        if not isinstance(parts, list) or not all(
            isinstance(p, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in p)
            for p in parts
        ):
            raise PartitionStructureError("'parts' must be a list of integer lists")
        try:
            kind = Kind.parse(doc.get("kind", "total"))
        except ValueError:
            raise PartitionStructureError(f"unknown partition kind {doc.get('kind')!r}") from None
        return cls(parts, kind)

    @classmethod
    def from_json(cls, text: str) -> "VertexPartition":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Violation:
    """First failing requirement: part ``i`` does not dominate ``vertex`` of part ``j``."""

    i: int
    j: int
    vertex: int

    def to_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "vertex": self.vertex}


def check_structure(g: Graph, p: VertexPartition) -> None:
    seen = set()
    for i, part in enumerate(p.parts, start=1):
        for v in part:
            if not 0 <= v < g.n:
                raise PartitionStructureError(f"vertex {v} in part {i} is out of range")
            if v in seen:
                raise PartitionStructureError(f"vertex {v} appears in more than one part")
            seen.add(v)
    if len(seen) != g.n:
        missing = sorted(set(range(g.n)) - seen)
        raise PartitionStructureError(f"partition misses vertices {missing[:10]}")


def is_total_dominating(g: Graph, d: Iterable[int], target: Iterable[int]) -> bool:
    dmask = 0
    for v in d:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
        dmask |= 1 << v
    for v in target:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
        if not g.adj_bits[v] & dmask:
            return False
    return True


def validate(g: Graph, p: VertexPartition, kind=None) -> Violation | None:
    """Return None when ``p`` satisfies its domination rule, else the first violation.

    ``kind`` overrides ``p.kind``.  Violations are ordered lexicographically by
    ``(i, j, vertex)``.  Coverage problems raise PartitionStructureError.
    """
    check_structure(g, p)
    kind = Kind.parse(kind) if kind is not None else p.kind
    k = p.k
    level = [0] * g.n
    for i, part in enumerate(p.parts, start=1):
        for v in part:
            level[v] = i
    best = None
    for v in range(g.n):
        lv = level[v]
        have = {level[u] for u in g.adj[v]}
        for i in range(1, lv + 1):
            if i in have:
                continue
            if i < lv:
                cand = (i, lv, v)
            elif kind is Kind.TOTAL:
                cand = (lv, lv, v)
            elif kind is Kind.MODIFIED_TOTAL and lv < k:
                cand = (lv, lv + 1, v)
            else:
                continue
            if best is None or cand < best:
                best = cand
            break
    return Violation(*best) if best else None


def is_valid(g: Graph, p: VertexPartition, kind=None) -> bool:
    return validate(g, p, kind) is None


def merge(p: VertexPartition, i: int, j: int) -> VertexPartition:
    """Fold part ``j`` into part ``i`` (1-based, ``i < j``)."""
    if not 1 <= i < j <= p.k:
        raise IndexError(f"need 1 <= i < j <= {p.k}, got i={i}, j={j}")
    parts = [list(q) for q in p.parts]
    parts[i - 1].extend(parts[j - 1])
    del parts[j - 1]
    return VertexPartition(parts, p.kind)


def downsize(p: VertexPartition, order: int) -> VertexPartition:
    """Merge the top parts together until exactly ``order`` parts remain."""
    if not 1 <= order <= p.k:
        raise IndexError(f"order must lie in 1..{p.k}")
    while p.k > order:
        p = merge(p, p.k - 1, p.k)
    return p


def upper_bound(g: Graph) -> int:
    if g.n == 0 or has_isolated_vertex(g):
        raise InfeasibleError("total transitivity is undefined for graphs with isolated vertices")
    return min(g.max_degree(), g.n // 2)


# Inclusion-minimal subsets are searched exactly up to this size; larger parts
# fall back to a greedy construction followed by pruning.
EXACT_TRIM_LIMIT = 16


def _sufficient(g: Graph, d: int, must: int) -> bool:
    """Every vertex of ``must | d`` has a neighbour inside ``d``."""
    rest = must | d
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if not g.adj_bits[v] & d:
            return False
        rest ^= low
    return True


def _trim(g: Graph, part: Sequence[int], must: int) -> list[int]:
    if len(part) <= EXACT_TRIM_LIMIT:
        for size in range(1, len(part) + 1):
            for combo in combinations(part, size):
                d = 0
                for v in combo:
                    d |= 1 << v
                if _sufficient(g, d, must):
                    return list(combo)
        raise AssertionError("part does not dominate its successors")
    pmask = 0
    for v in part:
        pmask |= 1 << v
    chosen = 0
    # one dominator per vertex that needs one, then close under self-domination
    pending = must
    while pending:
        low = pending & -pending
        v = low.bit_length() - 1
        pending ^= low
        if g.adj_bits[v] & chosen:
            continue
        cand = g.adj_bits[v] & pmask
        pick = cand & -cand
        chosen |= pick
        w = pick.bit_length() - 1
        if not g.adj_bits[w] & chosen:
            pending |= 1 << w
    for v in sorted(part, reverse=True):
        bit = 1 << v
        if chosen & bit and _sufficient(g, chosen ^ bit, must):
            chosen ^= bit
    return [v for v in part if chosen >> v & 1]


def normalize_tail(g: Graph, p: VertexPartition) -> VertexPartition:
    """Shrink the upper parts of a total partition, pushing surplus vertices into V_1.

    Scanning from the last part down to ``V_2``, each part keeps the smallest
    (then lexicographically first) subset that totally dominates itself and all
    parts kept above it.  The last part always ends with exactly two vertices.
    """
    if p.k < 2:
        raise ValueError("normalize_tail needs at least two parts")
    if not is_connected(g):
        raise ValueError("normalize_tail needs a connected graph")
    if p.kind is not Kind.TOTAL:
        p = p.with_kind(Kind.TOTAL)
    violation = validate(g, p)
    if violation is not None:
        raise ValueError(f"input is not a valid total partition: {violation}")
    parts = [list(q) for q in p.parts]
    kept_above = 0
    for idx in range(p.k - 1, 0, -1):
        keep = _trim(g, parts[idx], kept_above)
        surplus = [v for v in parts[idx] if v not in set(keep)]
        parts[0].extend(surplus)
        parts[idx] = keep
        for v in keep:
            kept_above |= 1 << v
    out = VertexPartition(parts, Kind.TOTAL)
    assert validate(g, out) is None
    return out
