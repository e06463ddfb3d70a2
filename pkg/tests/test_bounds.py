from __future__ import annotations

import itertools
import math
import random

import pytest

from swapnet.bounds import (
    MinorEmbedding,
    PathDecomposition,
    SimpleGraph,
    Strategy,
    ac_lower_bound_from_pathwidth,
    acquaintance_time_exact,
    complete_graph,
    parse_graph,
    path_graph,
    pathwidth_exact,
    star_graph,
    strategy_to_minor_embedding,
    strong_product,
    swapnetwork_to_strategy,
)
from swapnet.core import SizeLimitError, StructuralError, SwapNetError, decompose
from swapnet.primitives import canonical_2ccl, decompose_generalized_swap

TWO_ROUND_K4 = Strategy((0, 1, 2, 3), (((1, 2),), ((0, 1), (2, 3))))


def brute_pathwidth(g: SimpleGraph) -> int:
    """Vertex separation minimized over every ordering."""
    nb = g.neighbors()
    best = g.n
    for order in itertools.permutations(range(g.n)):
        worst, placed = 0, set()
        for v in order:
            placed.add(v)
            worst = max(worst, sum(1 for u in placed if nb[u] - placed))
        best = min(best, worst)
    return best


def random_graph(rng, n, p):
    return SimpleGraph(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_tree(rng, n):
    return SimpleGraph(n, frozenset((rng.randrange(v), v) for v in range(1, n)))


def test_simple_graph_validation():
    with pytest.raises(StructuralError):
        SimpleGraph(3, frozenset({(1, 1)}))
    with pytest.raises(StructuralError):
        SimpleGraph(3, frozenset({(0, 3)}))
    with pytest.raises(StructuralError):
        SimpleGraph.from_edges(3, [(0, 1), (1, 0)])
    g = SimpleGraph(3, frozenset({(2, 0)}))
    assert g.edges == {(0, 2)}


def test_parse_graph_formats():
    g = parse_graph("0 1\n1 2  # a comment\n\n2 3\n")
    assert g == path_graph(4)
    assert parse_graph('{"n": 5, "edges": [[0, 1], [1, 2], [2, 3]]}').n == 5
    with pytest.raises(StructuralError):
        parse_graph("0 1 2\n")
    with pytest.raises(StructuralError):
        parse_graph("{nope")


@pytest.mark.parametrize("n,rounds", [(3, 1), (4, 2), (5, 3)])
def test_acquaintance_time_of_paths(n, rounds):
    res = acquaintance_time_exact(complete_graph(n), path_graph(n))
    assert res.rounds == rounds == n - 2
    res.strategy.validate(path_graph(n))
    assert len(res.strategy.rounds) == rounds
    assert res.strategy.acquainted(path_graph(n), complete_graph(n).edges) == complete_graph(n).edges


def test_round_zero_counts():
    res = acquaintance_time_exact(complete_graph(2), path_graph(2))
    assert res.rounds == 0
    res = acquaintance_time_exact(path_graph(4), path_graph(4))
    assert res.rounds == 0


def test_cap_and_disconnected_host():
    assert acquaintance_time_exact(complete_graph(5), path_graph(5), round_cap=2).rounds is None
    empty = SimpleGraph(2, frozenset())
    assert acquaintance_time_exact(complete_graph(2), empty, round_cap=3).rounds is None


def test_hyperedge_targets_use_connectivity():
    # every triple of 4 agents on a 4-path
    triples = list(itertools.combinations(range(4), 3))
    res = acquaintance_time_exact(triples, path_graph(4), round_cap=6)
    assert res.rounds is not None
    assert res.strategy.acquainted(path_graph(4), triples) == set(triples)


def test_exact_search_refuses_large_hosts():
    with pytest.raises(SizeLimitError):
        acquaintance_time_exact(complete_graph(3), path_graph(8))


def test_strategy_rejects_non_matching():
    with pytest.raises(StructuralError):
        Strategy((0, 1, 2), (((0, 1), (1, 2)),))
    with pytest.raises(StructuralError):
        Strategy((0, 1, 2), (((0, 2),),)).validate(path_graph(3))


@pytest.mark.parametrize("n", range(1, 9))
def test_pathwidth_complete(n):
    res = pathwidth_exact(complete_graph(n))
    assert res.width == n - 1
    res.decomposition.validate(complete_graph(n))
    assert res.decomposition.width == res.width


def test_pathwidth_examples():
    assert pathwidth_exact(path_graph(6)).width == 1
    assert pathwidth_exact(star_graph(8)).width == 1
    assert pathwidth_exact(complete_graph(6)).width == 5


def test_pathwidth_against_brute_force():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, rng.random())
        res = pathwidth_exact(g)
        assert res.width == brute_pathwidth(g)
        res.decomposition.validate(g)
        assert res.decomposition.width == res.width


def test_pathwidth_of_random_trees():
    rng = random.Random(50)
    for _ in range(50):
        n = rng.randint(2, 14)
        t = random_tree(rng, n)
        res = pathwidth_exact(t)
        res.decomposition.validate(t)
        assert res.decomposition.width == res.width
        assert res.width <= math.log2(n) + 1


def test_pathwidth_refuses_large():
    with pytest.raises(SizeLimitError):
        pathwidth_exact(path_graph(15))


def test_path_decomposition_validation():
    g = path_graph(3)
    with pytest.raises(StructuralError):
        PathDecomposition((frozenset({0, 1}), frozenset({1}), frozenset({0, 2}))).validate(g)
    with pytest.raises(StructuralError):
        PathDecomposition((frozenset({0, 1}), frozenset({2}))).validate(g)


@pytest.mark.parametrize("n,bound", [(3, 1), (4, 1), (5, 3), (6, 3), (7, 5), (8, 5)])
def test_pathwidth_lower_bound_on_complete_graphs(n, bound):
    assert ac_lower_bound_from_pathwidth(complete_graph(n)) == bound
    assert bound == (n - 2 if n % 2 else n - 3)


def test_pathwidth_lower_bound_on_star():
    assert ac_lower_bound_from_pathwidth(star_graph(8)) == 0


def test_strong_product_examples():
    assert strong_product(path_graph(2), path_graph(2)) == complete_graph(4)
    grid = strong_product(path_graph(4), path_graph(3))
    # 3*3 + 4*2 grid edges and 2 * 3 * 2 diagonals
    assert grid.n == 12 and len(grid.edges) == 9 + 8 + 12
    g = random_graph(random.Random(1), 5, 0.5)
    assert strong_product(g, SimpleGraph(1, frozenset())) == g


def test_two_round_k4_embedding():
    emb, host = strategy_to_minor_embedding(TWO_ROUND_K4, complete_graph(4), path_graph(4))
    assert host == strong_product(path_graph(4), path_graph(3))
    emb.validate(complete_graph(4), host)


def test_zero_round_embedding():
    emb, host = strategy_to_minor_embedding(Strategy((0, 1), ()), path_graph(2), path_graph(2))
    emb.validate(path_graph(2), host)
    assert all(len(m) == 1 for m in emb.vertex_models.values())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_search_witness_embeds(n):
    res = acquaintance_time_exact(complete_graph(n), path_graph(n))
    emb, host = strategy_to_minor_embedding(res.strategy, complete_graph(n), path_graph(n))
    emb.validate(complete_graph(n), host)
    assert host.n == n * (n - 1)


def test_embedding_rejects_incomplete_strategy():
    with pytest.raises(SwapNetError, match=r"\(0, 3\)"):
        strategy_to_minor_embedding(Strategy((0, 1, 2, 3), (((1, 2),),)), complete_graph(4), path_graph(4))


def test_minor_embedding_validation_catches_errors():
    host = path_graph(3)
    guest = path_graph(2)
    with pytest.raises(StructuralError):
        MinorEmbedding({0: frozenset({0}), 1: frozenset({0})}, {(0, 1): (0, 1)}).validate(guest, host)
    with pytest.raises(StructuralError):
        MinorEmbedding({0: frozenset({0, 2}), 1: frozenset({1})}, {(0, 1): (0, 1)}).validate(guest, host)
    with pytest.raises(StructuralError):
        MinorEmbedding({0: frozenset({0}), 1: frozenset({2})}, {(0, 1): (0, 2)}).validate(guest, host)


def test_swapnetwork_to_strategy():
    s = swapnetwork_to_strategy(canonical_2ccl(4))
    assert s.rounds == (((0, 1), (2, 3)), ((1, 2),), ((0, 1), (2, 3)), ((1, 2),))
    assert swapnetwork_to_strategy(canonical_2ccl(4).with_layers(())).rounds == ()
    assert len(swapnetwork_to_strategy(decompose_generalized_swap(2, 2)).rounds) == 3


def test_swapnetwork_to_strategy_needs_decomposition():
    from swapnet.primitives import canonical_partition_network

    net = canonical_partition_network((2, 2))
    with pytest.raises(StructuralError):
        swapnetwork_to_strategy(net)
    assert swapnetwork_to_strategy(decompose(net)).rounds


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_2ccl_strategy_acquaints_everything(n):
    s = swapnetwork_to_strategy(canonical_2ccl(n))
    k = complete_graph(n)
    assert s.acquainted(path_graph(n), k.edges) == k.edges
    assert n - 2 <= len(s.rounds) <= n
