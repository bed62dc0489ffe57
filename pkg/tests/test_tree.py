import random

import pytest

from _oracles import free_trees
from ttrans.errors import StructureError
from ttrans.families import path, random_tree, star, tcmbt
from ttrans.graph import Graph, root_tree
from ttrans.oracle import exact_value, exact_vertex_numbers
from ttrans.partition import Kind, is_valid, upper_bound
from ttrans.tree import (
    MTTR,
    TTR,
    DpValue,
    combine_children,
    reconstruct,
    solve,
    solve_rooted,
    solve_rooted_choices,
    vertex_numbers,
)


def test_dp_value_views():
    assert DpValue(TTR, 3).ttr == 3
    assert DpValue(MTTR, 3).ttr == 2
    with pytest.raises(ValueError):
        DpValue(TTR, 0)
    with pytest.raises(ValueError):
        DpValue("other", 1)


def test_combine_without_partner():
    assert combine_children([DpValue(TTR, 1), DpValue(TTR, 2)]) == DpValue(MTTR, 3)


def test_combine_with_partner():
    got = combine_children([DpValue(TTR, 1), DpValue(TTR, 2), DpValue(MTTR, 3)])
    assert got == DpValue(TTR, 3)


def test_combine_prefers_ttr_children_for_the_chain():
    # the mttr child must stay free to share the top part
    got = combine_children([DpValue(MTTR, 2), DpValue(TTR, 1)])
    assert got == DpValue(TTR, 2)


def test_combine_needs_children():
    with pytest.raises(ValueError):
        combine_children([])


def test_p2_root_is_support():
    assert solve_rooted(root_tree(path(2), 0)) == DpValue(TTR, 1)
    res = solve(path(2))
    assert res.value == 1 and res.certificate.parts == ((0, 1),)


def test_p5_end_vertex():
    assert solve_rooted(root_tree(path(5), 0)).ttr == exact_vertex_numbers(path(5))[0]


def test_tcmbt3_root():
    g, root = tcmbt(3)
    rv = root_tree(g, root)
    assert solve_rooted(rv) == DpValue(TTR, 3)
    cert = reconstruct(rv, solve_rooted_choices(rv))
    assert cert.k == 3 and is_valid(g, cert)
    # root and exactly one of its children on top
    top = cert.parts[-1]
    assert len(top) == 2 and root in top and g.has_edge(*top)


def test_paths_and_stars():
    assert [solve(path(n)).value for n in range(2, 12)] == [1, 1, 1, 1, 2, 2, 2, 2, 2, 2]
    assert solve(star(8)).value == 1


def test_spider():
    # legs of lengths 1, 2 and 2 around centre 0
    g = Graph(6, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)])
    assert solve(g).value == exact_value(g)[0]
    assert solve(g).per_vertex == [exact_vertex_numbers(g)[v] for v in range(6)]


def test_rejects_non_trees():
    with pytest.raises(StructureError):
        solve(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(StructureError):
        solve(Graph(1))


def test_modified_reconstruction_when_root_is_mttr():
    # centre of P_5: both children are supports, so it can only sit alone on top
    g = path(5)
    rv = root_tree(g, 2)
    choices = solve_rooted_choices(rv)
    assert choices[2].value == DpValue(MTTR, 2)
    cert = reconstruct(rv, choices)
    assert cert.kind is Kind.MODIFIED_TOTAL
    assert cert.parts == ((0, 1, 3, 4), (2,))
    assert is_valid(g, cert)


def test_reconstruct_rejects_unreachable_level():
    g, root = tcmbt(2)
    rv = root_tree(g, root)
    with pytest.raises(ValueError):
        reconstruct(rv, solve_rooted_choices(rv), level=3)


def test_every_level_below_the_value_is_reachable():
    g, root = tcmbt(3)
    rv = root_tree(g, root)
    choices = solve_rooted_choices(rv)
    for level in (1, 2, 3):
        cert = reconstruct(rv, choices, level=level)
        assert cert.level_of()[root] == level
        assert is_valid(g, cert)


@pytest.mark.parametrize("n", range(2, 10))
def test_all_small_trees_against_oracle(n):
    for g in free_trees(n):
        res = solve(g)
        numbers = exact_vertex_numbers(g)
        assert res.per_vertex == [numbers[v] for v in range(n)]
        assert res.value == max(res.per_vertex) <= upper_bound(g)
        assert res.certificate.k == res.value
        assert res.best_root in res.certificate.parts[-1]
        assert is_valid(g, res.certificate)


def test_root_choice_does_not_depend_on_tie_breaking():
    rng = random.Random(3)
    for _ in range(40):
        g = random_tree(rng.randint(2, 30), rng.randrange(10**6))
        for u in range(g.n):
            forward = solve_rooted(root_tree(g, u)).ttr
            backward = solve_rooted(root_tree(g, u, reverse=True)).ttr
            assert forward == backward


def test_parallel_matches_serial():
    g = random_tree(300, 11)
    assert vertex_numbers(g, jobs=2) == vertex_numbers(g, jobs=1)
