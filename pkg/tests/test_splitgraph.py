import random

import pytest

from ttrans.errors import CapExceededError, InfeasibleError, NotSplitError
from ttrans.families import complete, cycle, figure1_split, path, random_split
from ttrans.graph import Graph
from ttrans.oracle import exact_value
from ttrans.partition import is_valid
from ttrans.splitgraph import (
    bounds,
    check_necessary,
    check_ttr_eq_1,
    check_ttr_eq_omega_minus_1,
    decompose,
    dom_K_S,
    from_labels,
    observation_failures,
    thin_s_vertices,
    ttr_eq_omega_minus_1_witness,
)


def _split(q, rows):
    """Clique 0..q-1 plus one S-vertex per row of clique neighbours."""
    edges = [(u, v) for u in range(q) for v in range(u + 1, q)]
    for j, row in enumerate(rows):
        edges += [(k, q + j) for k in row]
    return Graph(q + len(rows), edges)


def test_decompose_figure1():
    d = decompose(figure1_split(5).graph)
    assert d.K == (0, 1, 2, 3, 4) and d.S == (5, 6, 7, 8, 9) and d.omega == 5


def test_decompose_complete():
    d = decompose(complete(5))
    assert d.K == (0, 1, 2, 3, 4) and d.S == ()


def test_decompose_grows_clique_to_maximum():
    # a star: the degree test may put one leaf in S while it could join K
    d = decompose(path(2))
    assert d.omega == 2 and d.S == ()
    d = decompose(Graph(4, [(0, 1), (0, 2), (0, 3)]))
    assert d.omega == 2


@pytest.mark.parametrize(
    "g, kind",
    [
        (cycle(4), "C4"),
        (cycle(5), "C5"),
        (Graph(4, [(0, 1), (2, 3)]), "2K2"),
    ],
)
def test_not_split_witness(g, kind):
    with pytest.raises(NotSplitError) as info:
        decompose(g)
    assert info.value.witness_kind == kind
    assert len(info.value.witness) == (5 if kind == "C5" else 4)


def test_decompositions_are_maximum_split_partitions():
    rng = random.Random(1)
    for seed in range(200):
        gen = random_split(rng.randint(2, 6), rng.randint(0, 5), rng.choice([0.3, 0.7, 1.0]), seed)
        g = gen.graph
        d = decompose(g)
        assert all(g.has_edge(a, b) for a in d.K for b in d.K if a < b)
        assert not any(g.has_edge(a, b) for a in d.S for b in d.S)
        kmask = sum(1 << k for k in d.K)
        assert not any(g.adj_bits[s] & kmask == kmask for s in d.S)
        assert d.omega == max(len(c) for c in _cliques(g))


def _cliques(g):
    from itertools import combinations

    for size in range(g.n, 0, -1):
        found = [c for c in combinations(range(g.n), size)
                 if all(g.has_edge(a, b) for a, b in combinations(c, 2))]
        if found:
            return found
    return [()]


def test_from_labels_checks_its_input():
    gen = figure1_split(3)
    d = from_labels(gen.graph, gen.clique, gen.independent)
    assert d.omega == 3
    with pytest.raises(ValueError):
        from_labels(gen.graph, (0, 1), (2, 3, 4, 5))


def test_dom_examples():
    assert dom_K_S(decompose(figure1_split(5).graph))[0] == 5
    assert dom_K_S(decompose(_split(3, [[0], [0, 1], [0, 2]]))) == (1, (0,))
    assert dom_K_S(decompose(complete(4))) == (0, ())
    lonely = from_labels(Graph(4, [(0, 1), (1, 2), (0, 2)]), (0, 1, 2), (3,))
    assert dom_K_S(lonely) is None


def test_dom_cap():
    big = decompose(_split(21, [[0]]))
    with pytest.raises(CapExceededError):
        dom_K_S(big)


def test_ttr_eq_1_examples():
    assert check_ttr_eq_1(decompose(figure1_split(5).graph))
    two_bare = decompose(_split(3, [[0]]))
    assert not check_ttr_eq_1(two_bare)
    assert exact_value(two_bare.graph)[0] == 2
    assert not check_ttr_eq_1(decompose(complete(5)))


def test_omega_minus_one_examples():
    assert not check_ttr_eq_omega_minus_1(decompose(complete(4)))
    assert not check_ttr_eq_omega_minus_1(decompose(figure1_split(5).graph))
    # two dominators 0 and 1, then s_2 ~ {2}, s_3 ~ {2, 3}
    g = _split(4, [[0], [1], [0, 2], [1, 2, 3]])
    d = decompose(g)
    assert dom_K_S(d)[0] == 2
    w = ttr_eq_omega_minus_1_witness(d)
    assert w is not None and w.case == "b"
    assert exact_value(g)[0] == 3
    p = w.partition(d)
    assert p.k == 3 and is_valid(g, p)


def test_omega_minus_one_single_dominator():
    # 0 dominates S; pair {3, 4} takes the top part; 1, 2 ordered below it
    g = _split(5, [[0], [0, 1], [0, 1, 2], [0, 1, 2, 3]])
    d = decompose(g)
    w = ttr_eq_omega_minus_1_witness(d)
    assert w is not None and w.case == "a"
    assert exact_value(g)[0] == 4
    assert is_valid(g, w.partition(d))


def test_necessary_examples():
    assert check_necessary(decompose(figure1_split(5).graph), 1).passes
    one_s = decompose(_split(5, [[0, 1]]))
    assert dom_K_S(one_s)[0] == 1
    verdict = check_necessary(one_s, 4)
    assert not verdict.passes and "2p-q" in verdict.reason
    with pytest.raises(ValueError):
        check_necessary(one_s, 5)
    with pytest.raises(ValueError):
        check_necessary(one_s, 0)


def test_bounds():
    assert bounds(decompose(figure1_split(5).graph)) == (1, 4)
    assert bounds(decompose(path(2))) == (1, 1)
    assert bounds(decompose(complete(7))) == (1, 6)
    assert exact_value(complete(7))[0] == 3
    with pytest.raises(InfeasibleError):
        bounds(from_labels(Graph(3, [(0, 1)]), (0, 1), (2,)))


def test_thinning_keeps_validity():
    rng = random.Random(5)
    for seed in range(150):
        g = random_split(rng.randint(3, 6), rng.randint(1, 4), 0.6, seed).graph
        d = decompose(g)
        _, cert = exact_value(g)
        thin = thin_s_vertices(d, cert)
        assert thin.k == cert.k and is_valid(g, thin)
        assert observation_failures(d, cert) == []


def test_observations_catch_a_bad_partition():
    g = figure1_split(3).graph
    d = decompose(g)
    from ttrans.partition import VertexPartition

    # not a valid total partition: pendants outside V_1 and a part with no clique vertex
    p = VertexPartition([[0, 1, 2], [3, 4, 5]])
    assert observation_failures(d, p)
