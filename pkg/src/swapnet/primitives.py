"""Building blocks: generalized swaps, complete and bipartite swap networks,
and permutation routing with an odd-even transposition network."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    AcquaintOp,
    Layer,
    Mapping,
    StructuralError,
    SwapNetwork,
    SwapOp,
    check_mapping,
    identity,
    inverse,
    merge_layers,
    swap_wave,
)


@dataclass(frozen=True)
class Partition:
    """Ordered sizes of contiguous parts covering the line."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise StructuralError(f"part sizes must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def windows(self) -> list[tuple[int, int]]:
        out, start = [], 0
        for size in self.parts:
            out.append((start, size))
            start += size
        return out


@dataclass(frozen=True)
class Bipartition:
    """Contiguous groups on the left half followed by groups on the right half."""

    left_groups: tuple
    right_groups: tuple

    def __post_init__(self):
        left = tuple(int(g) for g in self.left_groups)
        right = tuple(int(g) for g in self.right_groups)
        if not left or not right or any(g < 1 for g in left + right):
            raise StructuralError(f"invalid bipartition {left} | {right}")
        object.__setattr__(self, "left_groups", left)
        object.__setattr__(self, "right_groups", right)

    @property
    def n(self) -> int:
        return sum(self.left_groups) + sum(self.right_groups)


def decompose_generalized_swap(k1: int, k2: int) -> SwapNetwork:
    """Standard-swap network for a ``(k1, k2)``-swap on ``k1 + k2`` sites."""
    if k1 < 1 or k2 < 1:
        raise StructuralError(f"block sizes must be positive, got ({k1}, {k2})")
    return SwapNetwork(k1 + k2, layers=tuple(Layer(tuple(s)) for s in swap_wave(0, k1, k2)))


def ccl2_layers(n: int, offset: int = 0, start_odd: bool = False,
                acquaint: bool = True) -> list[Layer]:
    """Layers of the canonical 2-complete linear network on sites
    ``offset .. offset + n - 1``: ``n`` alternating matchings, each standard swap
    preceded by a width-2 opportunity on the same pair."""
    layers = []
    for t in range(n):
        first = (t + start_odd) % 2
        pairs = range(first, n - 1, 2)
        if not pairs:
            continue
        if acquaint:
            layers.append(Layer(tuple(AcquaintOp(offset + i, 2) for i in pairs)))
        layers.append(Layer(tuple(SwapOp(offset + i) for i in pairs)))
    return layers


def canonical_2ccl(n: int, start_odd: bool = False, initial: Mapping | None = None,
                   swap_kind: str = "logical") -> SwapNetwork:
    """Acquaints every pair in ``n`` swap layers and reverses the line."""
    if n < 2:
        raise StructuralError(f"2-CCL needs n >= 2, got {n}")
    return SwapNetwork(n, initial, tuple(ccl2_layers(n, start_odd=start_odd)), swap_kind)


def _sort_layers(keys: list, lo: int, hi: int, start: int = 0) -> list[list[SwapOp]]:
    """Odd-even transposition sort of ``keys[lo:hi]`` in place; returns the
    swaps performed per round, empty rounds dropped."""
    rounds = []
    for r in range(hi - lo):
        swaps = []
        for i in range(lo + (r + start) % 2, hi - 1, 2):
            if keys[i] > keys[i + 1]:
                keys[i], keys[i + 1] = keys[i + 1], keys[i]
                swaps.append(SwapOp(i))
        if swaps:
            rounds.append(swaps)
    return rounds


def routing_layers(source: Mapping, target: Mapping) -> list[Layer]:
    """Standard-swap layers (at most ``n``) taking ``source`` to ``target``."""
    check_mapping(source)
    check_mapping(target, len(source))
    where = inverse(target)
    keys = [where[q] for q in source]
    return [Layer(tuple(r)) for r in _sort_layers(keys, 0, len(keys))]


def route_permutation(target: Mapping, initial: Mapping | None = None,
                      swap_kind: str = "logical") -> SwapNetwork:
    """Network of standard swaps whose net permutation is ``target``.

    Runs ``n`` rounds of odd-even transposition comparators keyed on each
    logical id's destination site and keeps only the exchanging comparators.
    """
    target = tuple(target)
    check_mapping(target)
    initial = identity(len(target)) if initial is None else tuple(initial)
    return SwapNetwork(len(target), initial, tuple(routing_layers(initial, target)), swap_kind)


def partition_layers(parts: Sequence[int], offset: int = 0, acquaint: bool = True,
                     reverse_parts: bool = True, start_odd: bool = False) -> list[Layer]:
    """Canonical complete swap network over contiguous parts.

    Parts are treated as atomic units and pushed through the same alternating
    schedule as the 2-CCL network; each ``(k_i, k_j)``-swap is preceded by an
    opportunity on the union of the two parts. With ``reverse_parts`` each
    part is then reversed internally so the net effect is a full reversal.
    """
    sizes = list(parts)
    m = len(sizes)
    n = sum(sizes)
    layers = []
    for t in range(m):
        starts = [offset + sum(sizes[:j]) for j in range(m)]
        pairs = range((t + start_odd) % 2, m - 1, 2)
        if not pairs:
            continue
        if acquaint:
            layers.append(Layer(tuple(AcquaintOp(starts[j], sizes[j] + sizes[j + 1]) for j in pairs)))
        layers.append(Layer(tuple(SwapOp(starts[j], sizes[j], sizes[j + 1]) for j in pairs)))
        for j in pairs:
            sizes[j], sizes[j + 1] = sizes[j + 1], sizes[j]
    if reverse_parts:
        start, blocks = offset, []
        for size in sizes:
            if size > 1:
                blocks.append(ccl2_layers(size, offset=start, acquaint=False))
            start += size
        layers.extend(merge_layers(*blocks))
    assert sum(sizes) == n
    return layers


def canonical_partition_network(p: Partition | Sequence[int], reverse_parts: bool = True,
                                initial: Mapping | None = None) -> SwapNetwork:
    """Complete swap network in which every pair of parts becomes adjacent."""
    p = p if isinstance(p, Partition) else Partition(tuple(p))
    return SwapNetwork(p.n, initial, tuple(partition_layers(p.parts, reverse_parts=reverse_parts)))


def bipartite_layers(left: Sequence[int], right: Sequence[int], offset: int = 0,
                     min_width: int = 2, interface: bool = False) -> list[Layer]:
    """Bipartite swap network over contiguous groups.

    Every left group is swapped past every right group exactly once, in the
    wave pattern of a generalized swap lifted to groups, so the net effect is
    the block swap of the two halves. Each group swap is preceded by an
    opportunity on the union of the two groups when that union is at least
    ``min_width`` wide. With ``interface`` a width-2 opportunity is also placed
    on the two facing sites just before and just after each group swap.
    """
    a, b = len(left), len(right)
    order = list(left) + list(right)  # group sizes by slot
    side = ["L"] * a + ["R"] * b
    layers = []
    for step in range(a + b - 1):
        starts, pos = [], offset
        for size in order:
            starts.append(pos)
            pos += size
        # pairs (left group i from the right end, right group j) with i + j == step
        slots = []
        for slot in range(len(order) - 1):
            if side[slot] == "L" and side[slot + 1] == "R":
                slots.append(slot)
        unions, before, swaps, after = [], [], [], []
        for slot in slots:
            p, k1, k2 = starts[slot], order[slot], order[slot + 1]
            if k1 + k2 >= min_width:
                unions.append(AcquaintOp(p, k1 + k2))
            if interface:
                before.append(AcquaintOp(p + k1 - 1, 2))
                after.append(AcquaintOp(p + k2 - 1, 2))
            swaps.append(SwapOp(p, k1, k2))
        for seq in (unions, before, swaps, after):
            if seq:
                layers.append(Layer(tuple(seq)))
        for slot in slots:
            order[slot], order[slot + 1] = order[slot + 1], order[slot]
            side[slot], side[slot + 1] = side[slot + 1], side[slot]
    return layers


def bipartite_network(b: Bipartition, min_width: int = 2, interface: bool = False,
                      initial: Mapping | None = None) -> SwapNetwork:
    """Acquaints the union of every left group with every right group."""
    return SwapNetwork(b.n, initial, tuple(bipartite_layers(b.left_groups, b.right_groups,
                                                            min_width=min_width, interface=interface)))
