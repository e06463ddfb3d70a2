"""k-complete linear swap networks.

The recursion starts from the 2-CCL network. To go from locality ``k - 1`` to
``k``, every layer of width-``(k - 1)`` opportunities is replaced by a complete
swap network over the partition whose parts are those windows (plus singleton
parts for the remaining sites). Whenever two parts ``A`` and ``B`` meet, each
element of ``B`` is brought to the face of ``B`` touching ``A`` so that ``A``
plus that element fills a window of ``k`` sites: the half of ``B`` nearest
``A`` before the block swap, the other half after it. The inserted network
ends by restoring a full reversal of the line, so the rest of the base network
is replayed mirrored.
"""

from __future__ import annotations

import math

from .core import (
    AcquaintOp,
    Layer,
    StructuralError,
    SwapNetwork,
    SwapOp,
    apply_layer,
    mirror_layer,
)
from .primitives import _sort_layers, ccl2_layers, routing_layers


def _meet(p: int, a: int, b: int, k: int) -> tuple[list[list], list, list[list]]:
    """Sub-layers around the swap of blocks of sizes ``a`` (left, at ``p``) and
    ``b`` (right) so that every ``k``-set made of a full ``(k - 1)``-block
    and one element of the other block fills a window at some point."""
    visit_b = a == k - 1  # every element of B must face A
    visit_a = b == k - 1
    near_a = math.ceil(a / 2) if visit_a else 0
    near_b = math.ceil(b / 2) if visit_b else 0
    far_a = a - near_a if visit_a else 0
    far_b = b - near_b if visit_b else 0

    pre = []
    for i in range(max(near_a, near_b)):
        if i < near_b:
            pre.append([AcquaintOp(p, a + 1)])
        if i < near_a:
            pre.append([AcquaintOp(p + a - 1, b + 1)])
        rot = []
        if i < near_a - 1:  # next element of A's near half to its right end
            rot.append(SwapOp(p + a - near_a, near_a - 1, 1))
        if i < near_b - 1:  # next element of B's near half to its left end
            rot.append(SwapOp(p + a, 1, near_b - 1))
        if rot:
            pre.append(rot)

    # after the swap B sits on [p, p + b) and A on [p + b, p + a + b)
    post = []
    for i in range(max(far_a, far_b)):
        if i < far_a:
            post.append([AcquaintOp(p, b + 1)])
        if i < far_b:
            post.append([AcquaintOp(p + b - 1, a + 1)])
        rot = []
        if i < far_b - 1:
            rot.append(SwapOp(p + b - far_b, far_b - 1, 1))
        if i < far_a - 1:
            rot.append(SwapOp(p + b, 1, far_a - 1))
        if rot:
            post.append(rot)
    return pre, [SwapOp(p, a, b)], post


def _part_network(sizes: list[int], n: int, k: int) -> list[Layer]:
    """Complete swap network over contiguous parts with k-local opportunities,
    ending in a full reversal of the line."""
    sizes = list(sizes)
    m = len(sizes)
    labels = list(range(n))  # original site of the item now at each site
    layers = []
    for t in range(m):
        starts = [sum(sizes[:j]) for j in range(m)]
        pairs = list(range(t % 2, m - 1, 2))
        if not pairs:
            continue
        meets = [_meet(starts[j], sizes[j], sizes[j + 1], k) for j in pairs]
        depth_pre = max(len(pre) for pre, _, _ in meets)
        depth_post = max(len(post) for _, _, post in meets)
        for i in range(depth_pre):
            ops = []
            for pre, _, _ in meets:
                shift = depth_pre - len(pre)  # align every block swap
                if i >= shift:
                    ops.extend(pre[i - shift])
            layers.append(Layer(tuple(ops)))
        layers.append(Layer(tuple(op for _, swap, _ in meets for op in swap)))
        for i in range(depth_post):
            layers.append(Layer(tuple(op for _, _, post in meets if i < len(post) for op in post[i])))
        for j in pairs:
            sizes[j], sizes[j + 1] = sizes[j + 1], sizes[j]
    layers = [l for l in layers if l.ops]
    for layer in layers:
        labels = list(apply_layer(tuple(labels), layer))

    # restore each part to the reversed order of its original contents
    keys = [n - 1 - x for x in labels]
    rounds, start = [], 0
    for size in sizes:
        block = _sort_layers(keys, start, start + size)
        rounds.append(block)
        start += size
    for i in range(max((len(r) for r in rounds), default=0)):
        layers.append(Layer(tuple(op for r in rounds if i < len(r) for op in r[i])))
    return layers


def _partition_of(acq: list[AcquaintOp], n: int) -> list[int]:
    sizes, pos = [], 0
    for op in sorted(acq, key=lambda o: o.position):
        sizes.extend([1] * (op.position - pos))
        sizes.append(op.width)
        pos = op.position + op.width
    sizes.extend([1] * (n - pos))
    return sizes


def _raise_locality(layers: list[Layer], n: int, k: int, keep_lower: bool) -> list[Layer]:
    """One recursion step: from a (k-1)-complete layer list to a k-complete one."""
    out = []
    mirrored = False
    for layer in layers:
        if mirrored:
            layer = mirror_layer(layer, n)
        top = [op for op in layer.acquaintances if op.width == k - 1]
        if not top:
            if layer.swaps or keep_lower:
                out.append(layer)
            elif layer.ops:
                rest = tuple(op for op in layer.ops if not isinstance(op, AcquaintOp))
                if rest:
                    out.append(Layer(rest))
            continue
        if keep_lower:
            out.append(layer)
        elif layer.swaps:
            out.append(Layer(layer.swaps))
        out.extend(_part_network(_partition_of(top, n), n, k))
        mirrored = not mirrored
    return out


def k_complete(n: int, k: int, keep_lower: bool = False) -> SwapNetwork:
    """Network acquainting every k-subset of ``n`` logical qubits.

    ``keep_lower`` keeps the opportunities of every lower locality met along
    the recursion instead of emitting only width-``k`` ones.
    """
    if not 2 <= k <= n:
        raise StructuralError(f"need 2 <= k <= n, got k={k}, n={n}")
    layers = ccl2_layers(n)
    for j in range(3, k + 1):
        layers = _raise_locality(layers, n, j, keep_lower)
    return SwapNetwork(n, None, tuple(layers))


def three_complete(n: int, keep_lower: bool = False) -> SwapNetwork:
    """3-CCL: the 2-CCL network with each opportunity layer expanded into a
    complete 2-swap network over the pairs of that layer."""
    if n < 3:
        raise StructuralError(f"3-complete network needs n >= 3, got {n}")
    return k_complete(n, 3, keep_lower)


def _delta_order(n: int, delta: int) -> list[int]:
    """Logical ids class by class (residues mod ``delta``), arranged so the
    turn between even and odd sites falls on a class boundary when possible,
    and otherwise splits a class at a pair near the middle of the id range."""
    half = n // 2
    classes = [list(range(r, n, delta)) for r in range(delta)]
    big = [i for i in range(delta) if len(classes[i]) == len(classes[0])]
    small = [i for i in range(delta) if i not in big]
    size_big = len(classes[0])
    size_small = len(classes[small[0]]) if small else 0

    def take(nb, ns, exclude=None):
        return ([i for i in big if i != exclude][:nb]
                + [i for i in small if i != exclude][:ns])

    def flat(ids):
        return [x for i in ids for x in classes[i]]

    for nb in range(len(big) + 1):
        for ns in range(len(small) + 1):
            if nb + ns and nb * size_big + ns * size_small == half:
                first = take(nb, ns)
                return flat(first) + flat(i for i in range(delta) if i not in first)
    for split in range(delta):
        n_big = sum(1 for i in big if i != split)
        n_small = sum(1 for i in small if i != split)
        for nb in range(n_big + 1):
            for ns in range(n_small + 1):
                j = half - nb * size_big - ns * size_small
                if not 0 < j < len(classes[split]):
                    continue
                for cls in (classes[split], classes[split][::-1]):
                    # a third id lies within n/2 of one end of the broken pair
                    if half - 1 - delta <= min(cls[j - 1], cls[j]) <= half - delta:
                        first = take(nb, ns, split)
                        rest = [i for i in range(delta) if i not in first and i != split]
                        return flat(first) + cls + flat(rest)
    raise StructuralError(f"no layout for delta={delta} on {n} sites")


def delta_mapping(n: int, delta: int) -> tuple:
    """Mapping in which logical ids ``x`` and ``x + delta`` sit two sites apart.

    The ids, listed by residue class mod ``delta``, are laid on the sites
    ``0, 2, ..., n - 2, n - 1, n - 3, ..., 1``; consecutive entries are two
    sites apart except across the turn from even to odd sites.
    """
    sites = list(range(0, n, 2)) + list(range(n - 1, 0, -2))
    m = [0] * n
    for q, s in zip(_delta_order(n, delta), sites):
        m[s] = q
    return tuple(m)


def _distance_two_layers(n: int, start: tuple) -> tuple[list[Layer], tuple]:
    """2-CCL block from mapping ``start`` with width-3 opportunities on every
    window whose end sites hold a pair that started two sites apart."""
    watched = {frozenset((start[s], start[s + 2])) for s in range(n - 2)}
    out = []
    m = start
    for layer in ccl2_layers(n, acquaint=False):
        found = [s for s in range(n - 2) if frozenset((m[s], m[s + 2])) in watched]
        # greedy packing into layers of disjoint windows
        while found:
            chosen, rest, end = [], [], -1
            for s in found:
                if s > end:
                    chosen.append(AcquaintOp(s, 3))
                    end = s + 2
                else:
                    rest.append(s)
            out.append(Layer(tuple(chosen)))
            found = rest
        out.append(layer)
        m = apply_layer(m, layer)
    return out, m


def alt_three_local(n: int) -> SwapNetwork:
    """Alternative 3-complete network: 2-CCL blocks from a sequence of
    mappings, joined by sorting networks."""
    if n < 3 or n % 2:
        raise StructuralError(f"alternative 3-local network needs even n >= 4, got {n}")
    layers = []
    m = delta_mapping(n, 1)
    initial = m
    for delta in range(1, n // 2 + 1):
        start = delta_mapping(n, delta)
        if start != m:
            route = routing_layers(m, start)
            layers.extend(route)
            m = start
        block, m = _distance_two_layers(n, m)
        layers.extend(block)
    return SwapNetwork(n, initial, tuple(layers))
