from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swapnet.core import (
    AcquaintOp,
    Layer,
    StructuralError,
    SwapOp,
    complete_gateset,
    net_permutation,
    swap_count,
    swap_depth,
)
from swapnet.primitives import (
    Bipartition,
    Partition,
    bipartite_network,
    canonical_2ccl,
    canonical_partition_network,
    decompose_generalized_swap,
    route_permutation,
)
from swapnet.verify import coverage

from oracles import naive_multiplicity, naive_track


@pytest.mark.parametrize("k1,k2,swaps,depth", [(1, 1, 1, 1), (2, 2, 4, 3), (3, 3, 9, 5)])
def test_generalized_swap_examples(k1, k2, swaps, depth):
    net = decompose_generalized_swap(k1, k2)
    assert swap_count(net) == swaps and swap_depth(net) == depth


def test_generalized_swap_33_rotation():
    assert net_permutation(decompose_generalized_swap(3, 3)) == (3, 4, 5, 0, 1, 2)


@pytest.mark.parametrize("k1,k2", list(itertools.product(range(1, 7), repeat=2)))
def test_generalized_swap_exhaustive(k1, k2):
    net = decompose_generalized_swap(k1, k2)
    assert all(op.is_standard for layer in net.layers for op in layer.swaps)
    assert swap_count(net) == k1 * k2
    assert len(net.layers) == k1 + k2 - 1
    n = k1 + k2
    assert net_permutation(net) == tuple(range(k1, n)) + tuple(range(k1))


def test_generalized_swap_rejects_empty_block():
    with pytest.raises(StructuralError):
        decompose_generalized_swap(0, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 9, 16, 31, 64])
def test_2ccl_counts(n):
    net = canonical_2ccl(n)
    # the second matching of a 2-site line is empty
    assert swap_depth(net) == (n if n > 2 else 1)
    assert swap_count(net) == n * (n - 1) // 2
    assert net_permutation(net) == tuple(reversed(range(n)))
    mult = naive_multiplicity(net)
    assert len(mult) == n * (n - 1) // 2 and set(mult.values()) == {1}


def test_2ccl_small_cases():
    two = canonical_2ccl(2)
    assert sum(1 for layer in two.layers if layer.swaps) == 1 and swap_count(two) == 1
    four = canonical_2ccl(4)
    assert swap_depth(four) == 4 and swap_count(four) == 6
    five = canonical_2ccl(5)
    assert swap_depth(five) == 5 and swap_count(five) == 10


def test_2ccl_opportunity_precedes_swap():
    net = canonical_2ccl(6)
    for t, layer in enumerate(net.layers):
        for op in layer.acquaintances:
            assert SwapOp(op.position) in net.layers[t + 1].swaps


def test_2ccl_start_odd_still_complete():
    net = canonical_2ccl(6, start_odd=True)
    assert coverage(net, complete_gateset(6, 2)).complete


def test_partition_validation():
    with pytest.raises(StructuralError):
        Partition((2, 0, 1))
    assert Partition((2, 1, 2)).windows() == [(0, 2), (2, 1), (3, 2)]


def test_partition_all_singletons_is_2ccl():
    assert canonical_partition_network((1,) * 6).layers == canonical_2ccl(6).layers


def _part_unions(parts):
    starts = [sum(parts[:i]) for i in range(len(parts))]
    return {frozenset(range(s, s + k)): k for s, k in zip(starts, parts)}


@pytest.mark.parametrize("parts", [(2, 2, 2), (2, 1, 2), (3, 1, 2, 2), (1, 4, 1), (5,), (2, 3)])
def test_partition_network_acquaints_part_pairs(parts):
    net = canonical_partition_network(parts)
    n = sum(parts)
    assert net_permutation(net) == tuple(reversed(range(n)))
    mult = naive_multiplicity(net)
    units = list(_part_unions(parts))
    for a, b in itertools.combinations(units, 2):
        assert mult.get(a | b, 0) >= 1


def test_partition_212_widths():
    net = canonical_partition_network((2, 1, 2))
    widths = [op.width for layer in net.layers for op in layer.acquaintances]
    assert sorted(widths) == [3, 3, 4]
    assert net_permutation(net) == (4, 3, 2, 1, 0)


def test_partition_without_reversal():
    net = canonical_partition_network((2, 2, 2), reverse_parts=False)
    assert net_permutation(net) == (4, 5, 2, 3, 0, 1)


def test_bipartite_single_pair():
    net = bipartite_network(Bipartition((1,), (1,)))
    assert net.layers == (Layer((AcquaintOp(0, 2),)), Layer((SwapOp(0),)))


def test_bipartite_pairs_of_12():
    b = Bipartition((2, 2, 2), (2, 2, 2))
    net = bipartite_network(b)
    mult = naive_multiplicity(net, 4)
    groups = [frozenset(range(i, i + 2)) for i in range(0, 12, 2)]
    left, right = groups[:3], groups[3:]
    for g, h in itertools.product(left, right):
        assert mult.get(g | h) == 1
    for g, h in itertools.combinations(left, 2):
        assert g | h not in mult
    for g, h in itertools.combinations(right, 2):
        assert g | h not in mult
    assert len(mult) == 9
    assert net_permutation(net) == tuple(range(6, 12)) + tuple(range(6))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=4),
       st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_bipartite_properties(left, right):
    b = Bipartition(tuple(left), tuple(right))
    net = bipartite_network(b)
    nl = sum(left)
    assert net_permutation(net) == tuple(range(nl, b.n)) + tuple(range(nl))
    full = canonical_partition_network(tuple(left) + tuple(right))
    if left == right == [1]:
        # a lone swap cannot get cheaper
        assert swap_count(net) == swap_count(full) == 1
    else:
        assert swap_count(net) < swap_count(full)
    mult = naive_multiplicity(net)
    units = list(_part_unions(tuple(left) + tuple(right)))
    lu, ru = units[:len(left)], units[len(left):]
    crossed = {g | h for g, h in itertools.product(lu, ru)}
    assert set(mult) == crossed
    assert all(v == 1 for v in mult.values())


def test_bipartite_strictly_cheaper_than_partition():
    b = Bipartition((2, 2, 2), (2, 2, 2))
    assert swap_count(bipartite_network(b)) < swap_count(canonical_partition_network((2,) * 6))


def test_route_examples():
    assert swap_count(route_permutation((0, 1, 2, 3))) == 0
    rev = route_permutation((4, 3, 2, 1, 0))
    assert swap_depth(rev) == 5 and swap_count(rev) == 10
    t = (1, 0, 3, 2)
    net = route_permutation(t)
    assert net_permutation(net) == t and swap_depth(net) <= 4
    with pytest.raises(StructuralError):
        route_permutation((0, 0, 1))


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_route_random_permutations(n):
    rng = random.Random(n)
    for _ in range(1000):
        t = list(range(n))
        rng.shuffle(t)
        net = route_permutation(tuple(t))
        assert naive_track(net)[-1] == tuple(t)
        assert swap_depth(net) <= n


def test_route_from_nonidentity_initial():
    net = route_permutation((2, 0, 1, 3), initial=(3, 2, 1, 0))
    assert net_permutation(net) == (2, 0, 1, 3)
