"""Polynomial total-transitivity solver for trees, with certificate reconstruction.

For a vertex ``x`` of a rooted tree, let ``t(x)`` / ``m(x)`` be the highest part
index ``x`` can reach in a total / modified-total partition of its own subtree.
Each vertex stores exactly one of the two as a tagged :class:`DpValue`:

* a leaf stores ``(mttr, 1)``;
* a vertex with a leaf child stores ``(ttr, 1)`` (it is forced into ``V_1``);
* otherwise the children are combined: with ``l' = t(child)`` (``value`` for a
  ttr tag, ``value - 1`` for mttr), ``z`` is the longest chain of distinct
  children with ``l'_p >= p``.  If another child tagged mttr with value
  ``>= z + 1`` is left over it can share the top part with ``x`` and the result
  is ``(ttr, z + 1)``; otherwise it is ``(mttr, z + 1)``.

A ttr tag of value ``v`` means ``m = t = v``; an mttr tag of value ``v`` means
``t = v - 1``.  Rooting at every vertex gives ``ttr(u, T)`` for all ``u``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import StructureError
from .graph import Graph, RootedView, is_tree, root_tree
from .partition import Kind, VertexPartition

TTR = "ttr"
MTTR = "mttr"


@dataclass(frozen=True, order=True)
class DpValue:
    tag: str
    value: int

    def __post_init__(self):
        if self.tag not in (TTR, MTTR):
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.value < 1:
            raise ValueError("DP values are positive")

    @property
    def ttr(self) -> int:
        """Highest index reachable in a total partition of the subtree."""
        return self.value if self.tag == TTR else self.value - 1

    @property
    def mttr(self) -> int:
        return self.value


@dataclass
class Choice:
    """What the combination step picked at one vertex."""

    value: DpValue
    chain: tuple[int, ...] = ()
    partner: int | None = None
    kind: str = "inner"  # "leaf", "support" or "inner"


@dataclass
class TreeResult:
    value: int
    best_root: int
    per_vertex: list[int]
    certificate: VertexPartition
    choices: dict[int, Choice] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "best_root": self.best_root,
            "per_vertex": list(self.per_vertex),
            "certificate": self.certificate.to_dict(),
        }


def _greedy_chain(items):
    """Longest chain over ``(l', tag_rank, id)`` items sorted ascending."""
    chain = []
    for item in items:
        if item[0] >= len(chain) + 1:
            chain.append(item)
    return chain


def _combine(children: list[tuple[int, DpValue]]) -> Choice:
    if not children:
        raise ValueError("combine needs at least one child")
    # ttr-tagged children first among equal l', so mttr ones stay free as partners
    items = sorted((dv.ttr, dv.tag == MTTR, cid) for cid, dv in children)
    chain = _greedy_chain(items)
    z = len(chain)
    values = dict(children)
    candidates = sorted(
        (-dv.value, cid) for cid, dv in children if dv.tag == MTTR and dv.value >= z + 1
    )
    for _, cid in candidates:
        rest = [it for it in items if it[2] != cid]
        alt = _greedy_chain(rest)
        if len(alt) >= z:
            return Choice(DpValue(TTR, z + 1), tuple(it[2] for it in alt[:z]), cid)
    assert all(values[it[2]].ttr >= p for p, it in enumerate(chain, start=1))
    return Choice(DpValue(MTTR, z + 1), tuple(it[2] for it in chain), None)


def combine_children(values: list[DpValue]) -> DpValue:
    """Value of a vertex that is neither a leaf nor a support, from its children's values."""
    return _combine(list(enumerate(values))).value


def solve_rooted_choices(t: RootedView) -> dict[int, Choice]:
    if t.graph.n < 2:
        raise StructureError("tree solver needs at least two vertices")
    choices: dict[int, Choice] = {}
    for x in t.order:
        kids = t.children[x]
        if not kids:
            choices[x] = Choice(DpValue(MTTR, 1), kind="leaf")
        elif any(not t.children[c] for c in kids):
            choices[x] = Choice(DpValue(TTR, 1), kind="support")
        else:
            choices[x] = _combine([(c, choices[c].value) for c in kids])
    return choices


def solve_rooted(t: RootedView) -> DpValue:
    return solve_rooted_choices(t).get(t.root).value


def _root_number(g: Graph, u: int) -> int:
    return solve_rooted(root_tree(g, u)).ttr


def _root_numbers(args):
    g, roots = args
    return [_root_number(g, u) for u in roots]


def vertex_numbers(g: Graph, jobs: int | None = 1) -> list[int]:
    """``ttr(u, T)`` for every vertex, one rooting per vertex."""
    if not is_tree(g):
        raise StructureError("graph is not a tree")
    if g.n < 2:
        raise StructureError("tree solver needs at least two vertices")
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or g.n < 256:
        return [_root_number(g, u) for u in range(g.n)]
    chunks = [list(range(i, g.n, jobs)) for i in range(jobs)]
    out = [0] * g.n
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for roots, vals in zip(chunks, pool.map(_root_numbers, [(g, c) for c in chunks])):
            for u, val in zip(roots, vals):
                out[u] = val
    return out


def reconstruct(t: RootedView, choices: dict[int, Choice], level: int | None = None) -> VertexPartition:
    """Build a partition witnessing the root's DP value.

    With ``level=None`` the root's own tag decides: a ttr tag yields a total
    partition with the root in the top part, an mttr tag a modified-total one
    with the root alone on top.  An explicit ``level`` asks for a total
    partition placing the root in part ``level`` (at most ``t(root)``).
    """
    root_choice = choices[t.root]
    if level is None:
        if root_choice.value.tag == TTR:
            level, role, kind = root_choice.value.value, "A", Kind.TOTAL
        else:
            level, role, kind = root_choice.value.value, "B", Kind.MODIFIED_TOTAL
    else:
        role, kind = "A", Kind.TOTAL
        if not 1 <= level <= root_choice.value.ttr:
            raise ValueError(f"root cannot reach part {level}")

    where = {}
    # role A: the subtree dominates the vertex on every level up to its own.
    # role B: the parent shares the vertex's level, children cover the ones below.
    stack = [(t.root, level, role)]
    while stack:
        x, p, role = stack.pop()
        ch = choices[x]
        kids = t.children[x]
        if p == 1:
            if role == "A" and not kids:
                raise ValueError(f"single vertex {x} cannot dominate itself")
            sub = [x]
            while sub:
                y = sub.pop()
                where[y] = 1
                sub.extend(t.children[y])
            continue
        if ch.kind != "inner":
            raise ValueError(f"inconsistent choices: {ch.kind} vertex {x} asked for part {p}")
        where[x] = p
        chain = ch.chain
        used = set()
        if role == "A":
            if p <= len(chain):
                for lvl in range(1, p + 1):
                    stack.append((chain[lvl - 1], lvl, "A"))
                    used.add(chain[lvl - 1])
            elif p == len(chain) + 1 and ch.partner is not None:
                for lvl in range(1, p):
                    stack.append((chain[lvl - 1], lvl, "A"))
                    used.add(chain[lvl - 1])
                stack.append((ch.partner, p, "B"))
                used.add(ch.partner)
            else:
                raise ValueError(f"vertex {x} cannot reach part {p} in a total partition")
        else:
            if p - 1 > len(chain):
                raise ValueError(f"vertex {x} cannot reach part {p} in a modified partition")
            for lvl in range(1, p):
                stack.append((chain[lvl - 1], lvl, "A"))
                used.add(chain[lvl - 1])
        for c in kids:
            if c not in used:
                stack.append((c, 1, "A"))
    k = max(where.values())
    parts = [[] for _ in range(k)]
    for v, lvl in where.items():
        parts[lvl - 1].append(v)
    return VertexPartition(parts, kind)


def solve(g: Graph, jobs: int | None = 1) -> TreeResult:
    per_vertex = vertex_numbers(g, jobs)
    value = max(per_vertex)
    best_root = per_vertex.index(value)
    rv = root_tree(g, best_root)
    choices = solve_rooted_choices(rv)
    cert = reconstruct(rv, choices, level=value)
    return TreeResult(value, best_root, per_vertex, cert, choices)
