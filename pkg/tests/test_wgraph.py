import itertools
import random

import pytest

from evoaut.errors import (
    FieldMismatch,
    TooLarge,
    UnknownVertex,
    ZeroArgument,
)
from evoaut.scalar import QQ
from evoaut.wgraph import (
    GraphAutomorphism,
    WeightedGraph,
    algebra_to_wgraph,
    enumerate_graph_automorphisms,
    is_graph_isomorphism,
    is_unweighted_automorphism,
    tree_of,
    wgraph_to_algebra,
)

from helpers import (
    F5,
    F7,
    ear_algebra,
    random_algebra,
    random_rational_algebra,
    two_loop_algebra,
    zero_algebra,
    zero_square_algebra,
)


def test_algebra_to_wgraph_examples():
    g = algebra_to_wgraph(zero_square_algebra(QQ))
    assert g.edges() == [(0, 0)]
    assert g.weight(0, 0) == QQ.one

    g = algebra_to_wgraph(two_loop_algebra(QQ))
    assert g.edges() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert str(g.weight(1, 0)) == "2"
    assert str(g.weight(0, 1)) == "1"

    g = algebra_to_wgraph(zero_algebra(QQ, 3))
    assert g.edges() == []


def test_wgraph_to_algebra_examples():
    loop = WeightedGraph(QQ, ["v"], {(0, 0): 1})
    a = wgraph_to_algebra(loop, QQ)
    assert a.square_of(0) == (QQ.one,)

    ear = algebra_to_wgraph(ear_algebra(QQ))
    assert ear.edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 0), (4, 0)]
    back = wgraph_to_algebra(ear, QQ)
    assert back == ear_algebra(QQ)


def test_round_trip_on_random_instances():
    rng = random.Random(41)
    for _ in range(100):
        if rng.random() < 0.5:
            a = random_algebra(rng, rng.choice([F5, F7]), rng.randint(1, 5))
        else:
            a = random_rational_algebra(rng, rng.randint(1, 5))
        g = algebra_to_wgraph(a)
        assert wgraph_to_algebra(g, a.field) == a
        # single-edge condition holds by construction: keys are unique pairs
        assert len(g.weights) == len(set(g.weights))
        assert all(not w.is_zero() for w in g.weights.values())
        assert algebra_to_wgraph(wgraph_to_algebra(g, a.field)) == g


def test_graph_validation():
    with pytest.raises(ZeroArgument):
        WeightedGraph(QQ, ["a", "b"], {(0, 1): 0})
    with pytest.raises(UnknownVertex):
        WeightedGraph(QQ, ["a"], {(0, 1): 1})
    with pytest.raises(FieldMismatch):
        wgraph_to_algebra(WeightedGraph(QQ, ["a"], {(0, 0): 1}), F5)


def test_tree_of():
    ear = algebra_to_wgraph(ear_algebra(QQ))
    assert tree_of(ear, ["e1"]) == frozenset({0, 1, 2, 3, 4})
    empty = WeightedGraph(QQ, ["a", "b", "c"], {})
    assert tree_of(empty, ["b"]) == frozenset({1})
    chain = WeightedGraph(QQ, ["a", "b", "c"], {(0, 1): 1, (1, 2): 1})
    assert tree_of(chain, [1]) == frozenset({1, 2})
    with pytest.raises(UnknownVertex):
        tree_of(chain, ["zz"])


def test_tree_is_fixed_point_of_expansion():
    rng = random.Random(43)
    for _ in range(50):
        a = random_algebra(rng, F5, rng.randint(1, 5))
        g = algebra_to_wgraph(a)
        seed = rng.randrange(a.dim)
        tree = tree_of(g, [seed])
        expanded = set(tree)
        for v in tree:
            expanded.update(g.out_neighbors(v))
        assert expanded == tree


def brute_force_automorphisms(graph):
    n = graph.n_vertices
    out = []
    for sigma in itertools.permutations(range(n)):
        if is_unweighted_automorphism(graph, sigma):
            out.append(sigma)
    return sorted(out)


def test_enumerate_graph_automorphisms_examples():
    two = algebra_to_wgraph(two_loop_algebra(QQ))
    assert [a.sigma for a in enumerate_graph_automorphisms(two)] == [(0, 1), (1, 0)]

    ear = algebra_to_wgraph(ear_algebra(QQ))
    sigmas = [a.sigma for a in enumerate_graph_automorphisms(ear)]
    assert sigmas == brute_force_automorphisms(ear)
    assert sigmas == [(0, 1, 2, 3, 4)]  # vertex 1 has the unique out-degree 2

    empty = WeightedGraph(QQ, ["a", "b", "c"], {})
    assert len(enumerate_graph_automorphisms(empty)) == 6


def test_enumeration_matches_brute_force_and_is_a_group():
    rng = random.Random(47)
    for _ in range(60):
        a = random_algebra(rng, F5, rng.randint(1, 5), density=rng.choice([0.2, 0.5, 0.8]))
        g = algebra_to_wgraph(a)
        autos = enumerate_graph_automorphisms(g)
        sigmas = [x.sigma for x in autos]
        assert sigmas == brute_force_automorphisms(g)
        assert sigmas[0] == tuple(range(g.n_vertices))
        found = set(sigmas)
        for x in autos:
            assert x.inverse().sigma in found
            for y in autos:
                assert x.compose(y).sigma in found


def test_enumeration_cap():
    big = WeightedGraph(QQ, [f"v{i}" for i in range(13)], {})
    with pytest.raises(TooLarge):
        enumerate_graph_automorphisms(big)
    assert len(enumerate_graph_automorphisms(
        WeightedGraph(QQ, ["a", "b"], {}), cap=2)) == 2


def test_cross_graph_isomorphism():
    g = algebra_to_wgraph(two_loop_algebra(QQ))
    relabeled = WeightedGraph(QQ, ["x", "y"],
                              {(1, 1): 1, (1, 0): 1, (0, 1): 2, (0, 0): 1})
    assert is_graph_isomorphism(g, relabeled, (1, 0))
    assert is_graph_isomorphism(g, relabeled, (0, 1))  # symmetric edge set
    chain = WeightedGraph(QQ, ["x", "y"], {(0, 1): 1})
    assert not is_graph_isomorphism(g, chain, (0, 1))


def test_graph_automorphism_type():
    with pytest.raises(Exception):
        GraphAutomorphism((0, 0))
    ga = GraphAutomorphism((1, 2, 0))
    assert ga(0) == 1
    assert ga.inverse().sigma == (2, 0, 1)
    assert ga.compose(ga.inverse()).is_identity()
