import random

import pytest

from _oracles import assignment_search, atlas, peel_value, random_connected
from ttrans.errors import CeilingExceededError, InfeasibleError
from ttrans.families import complete, complete_bipartite, cycle, path, tcmbt
from ttrans.graph import Graph
from ttrans.oracle import PeelDp, default_ceiling, exact_value, exact_vertex_numbers
from ttrans.partition import Kind, is_valid, upper_bound

KINDS = list(Kind)


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete(6), 3),
        (cycle(7), 2),
        (complete_bipartite(3, 4), 3),
        (path(2), 1),
        (tcmbt(2)[0], 2),
    ],
)
def test_total_values(g, expected):
    k, cert = exact_value(g)
    assert k == expected
    assert cert.k == k and is_valid(g, cert)


def test_tcmbt2_transitive():
    assert exact_value(tcmbt(2)[0], Kind.TRANSITIVE)[0] == 3


def test_vertex_numbers_p5():
    # every vertex of P_5 is stuck in V_1: the leaves pin both supports there
    assert exact_vertex_numbers(path(5)) == {v: 1 for v in range(5)}
    assert assignment_search(path(5), "total")[1] == [1] * 5


def test_vertex_numbers_k4():
    assert exact_vertex_numbers(complete(4)) == {v: 2 for v in range(4)}


def test_leaves_of_trees_stay_in_first_part():
    g = tcmbt(2)[0]
    numbers = exact_vertex_numbers(g)
    assert all(numbers[v] == 1 for v in range(g.n) if g.degree(v) == 1)


def test_single_vertex_modified():
    assert exact_vertex_numbers(Graph(1), Kind.MODIFIED_TOTAL) == {0: 1}
    assert exact_value(Graph(1), Kind.TRANSITIVE)[0] == 1


def test_errors():
    with pytest.raises(InfeasibleError):
        exact_value(Graph(3, [(0, 1)]))
    with pytest.raises(InfeasibleError):
        exact_value(Graph(0))
    with pytest.raises(CeilingExceededError):
        exact_value(complete(17))
    with pytest.raises(CeilingExceededError):
        exact_value(complete(6), ceiling=5)


def test_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("TTRANS_CEILING", "4")
    assert default_ceiling() == 4
    with pytest.raises(CeilingExceededError):
        exact_value(complete(5))
    monkeypatch.delenv("TTRANS_CEILING")
    assert default_ceiling() == 16


def test_depth_of_full_set_is_zero():
    dp = PeelDp(cycle(6))
    assert dp.depth[(1 << 6) - 1] == 0


@pytest.mark.parametrize("kind", KINDS)
def test_matches_assignment_search_on_small_graphs(kind):
    # every graph on at most five vertices without isolates
    for g in atlas(5):
        value, per_vertex = assignment_search(g, kind.value)
        k, cert = exact_value(g, kind)
        assert k == value, g.edges()
        assert is_valid(g, cert, kind)
        numbers = exact_vertex_numbers(g, kind)
        assert [numbers[v] for v in range(g.n)] == per_vertex, g.edges()


def test_matches_definition_peel_on_seven_vertices():
    for g in atlas(7):
        assert exact_value(g)[0] == peel_value(g), g.edges()


def test_disconnected_graph_takes_best_component():
    g = Graph(10, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 3),
                   (3, 6), (4, 8)])
    parts = [Graph(3, [(0, 1), (1, 2), (2, 0)]),
             Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3), (1, 5)])]
    k, cert = exact_value(g)
    assert k == max(exact_value(h)[0] for h in parts)
    assert is_valid(g, cert)


def test_structural_properties_on_random_graphs():
    rng = random.Random(7)
    gaps = 0
    for _ in range(150):
        n = rng.randint(2, 11)
        g = random_connected(n, rng, rng.randint(0, 2 * n))
        values = {kind: exact_value(g, kind)[0] for kind in KINDS}
        assert values[Kind.TOTAL] <= values[Kind.MODIFIED_TOTAL]
        assert values[Kind.TOTAL] <= values[Kind.TRANSITIVE]
        assert values[Kind.TOTAL] <= upper_bound(g)
        ttr = exact_vertex_numbers(g)
        mttr = exact_vertex_numbers(g, Kind.MODIFIED_TOTAL)
        assert max(ttr.values()) == values[Kind.TOTAL]
        for v in range(n):
            assert ttr[v] <= mttr[v] <= ttr[v] + 1
            gaps += mttr[v] - ttr[v]
    assert gaps > 0
