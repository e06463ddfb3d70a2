"""Swap networks and gate sets for unitary coupled-cluster ansatz families.

Logical ids are spin orbitals. Each generator documents how ids map to
``(spatial orbital, spin)`` through the matching ``*_orbitals`` function; the
gate sets use the same labelling, so a network and its gate set always agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    AcquaintOp,
    GateSet,
    Layer,
    StructuralError,
    SwapNetwork,
    apply_layer,
    merge_layers,
    shift_op,
)
from .complete import k_complete
from .primitives import bipartite_layers, ccl2_layers, routing_layers

UP, DOWN = "up", "down"


@dataclass(frozen=True)
class SpinOrbital:
    spatial: int
    spin: str


@dataclass(frozen=True)
class OccupationSplit:
    """``eta`` occupied spin orbitals out of ``n``."""

    eta: int
    n: int

    def __post_init__(self):
        if not 1 <= self.eta < self.n:
            raise StructuralError(f"need 1 <= eta < n, got eta={self.eta}, n={self.n}")

    @property
    def occupied(self) -> range:
        return range(self.eta)

    @property
    def virtual(self) -> range:
        return range(self.eta, self.n)


def _alternating_spins(count: int) -> list[str]:
    # up, down, down, up, up, down, down, up, ...
    return [UP if i % 4 in (0, 3) else DOWN for i in range(count)]


def uccsd_orbitals(split: OccupationSplit) -> list[SpinOrbital]:
    """Ids ``0..eta-1`` are occupied, the rest virtual. Within each block the
    spins run up, down, down, up, up, ... and consecutive ids share a spatial
    orbital."""
    out = []
    for start, count in ((0, split.eta), (split.eta, split.n - split.eta)):
        for i, spin in enumerate(_alternating_spins(count)):
            out.append(SpinOrbital((start + i) // 2, spin))
    return out


def _num_up(ids, orbitals) -> int:
    return sum(orbitals[q].spin == UP for q in ids)


def uccsd_gateset(split: OccupationSplit, spin_adapted: bool = False) -> GateSet:
    """Doubles ``{i, j, a, b}`` and singles ``{i, a}``, occupied ``i, j`` and
    virtual ``a, b``. Spin adaptation keeps spin-preserving terms only."""
    orbitals = uccsd_orbitals(split)
    edges = []
    for i, a in itertools.product(split.occupied, split.virtual):
        if not spin_adapted or orbitals[i].spin == orbitals[a].spin:
            edges.append((i, a))
    for occ in itertools.combinations(split.occupied, 2):
        for vir in itertools.combinations(split.virtual, 2):
            if not spin_adapted or _num_up(occ, orbitals) == _num_up(vir, orbitals):
                edges.append(occ + vir)
    return GateSet(split.n, frozenset(edges), allow_nested=True)


def _rounds(size: int) -> list[list[int]]:
    """Pair offsets of each opportunity layer of a 2-CCL network on ``size``
    sites; a block too small to pair up gets one round with no pairs."""
    rounds = [[op.position for op in layer.acquaintances] for layer in ccl2_layers(size)
              if layer.acquaintances]
    return rounds or [[]]


def _groups(size: int, pairs: list[int]) -> list[int]:
    sizes, pos = [], 0
    for p in sorted(pairs):
        sizes.extend([1] * (p - pos))
        sizes.append(2)
        pos = p + 2
    sizes.extend([1] * (size - pos))
    return sizes


def _round_swaps(size: int, r: int, offset: int) -> Layer | None:
    swaps = ccl2_layers(size, offset=offset, acquaint=False)
    return swaps[r] if r < len(swaps) else None


def _pair_pair_layers(first: int, second: int, start: tuple, wanted=None, singles=None) -> list[Layer]:
    """Acquaint every pair of one block with every pair of the other block.

    The first block holds sites ``0..first-1`` and the second the remaining
    ``second`` sites. A 2-CCL network runs on the first block; between two of
    its swap layers a full 2-CCL network runs on the second block, and before
    each of the latter's swap layers a bipartite network over the current
    pairs of both blocks acquaints every union of a pair from each side. The
    bipartite network exchanges the blocks, so their positions are tracked.
    A last bipartite network over single sites acquaints every cross pair.

    ``wanted(pairs_first, pairs_second)`` may veto a bipartite stage; it gets
    the logical pairs currently grouped on each side. ``singles(m, left)`` may
    replace the last network; it gets the mapping and the left block size and
    returns layers or ``None``.
    """
    if wanted is None:
        wanted = lambda occ, vir: bool(occ and vir)
    layers = []
    m = start
    first_left = True

    def offset(is_first: bool) -> int:
        if is_first == first_left:
            return 0
        return second if is_first else first

    def emit(layer):
        nonlocal m
        if layer is not None and layer.ops:
            m = apply_layer(m, layer)
            layers.append(layer)

    rounds = _rounds(first) if first >= 2 and second >= 2 else []
    for r, occ_pairs in enumerate(rounds):
        for s, vir_pairs in enumerate(_rounds(second)):
            o, v = offset(True), offset(False)
            occ_logical = [(m[o + p], m[o + p + 1]) for p in occ_pairs]
            vir_logical = [(m[v + p], m[v + p + 1]) for p in vir_pairs]
            if wanted(occ_logical, vir_logical):
                og, vg = _groups(first, occ_pairs), _groups(second, vir_pairs)
                left, right = (og, vg) if first_left else (vg, og)
                for layer in bipartite_layers(left, right, min_width=4):
                    emit(layer)
                first_left = not first_left
            emit(_round_swaps(second, s, offset(False)))
        emit(_round_swaps(first, r, offset(True)))
    left = first if first_left else second
    custom = singles(m, left) if singles is not None else None
    for layer in custom if custom is not None else bipartite_layers([1] * left, [1] * (len(m) - left)):
        emit(layer)
    return layers


def _swaps_in(layers: list[Layer]) -> int:
    return sum(op.left_size * op.right_size for layer in layers for op in layer.swaps)


def _same_spin_singles(m: tuple, left: int, orbitals) -> list[Layer] | None:
    """Cross pairs of equal spin only. With both blocks sorted as ``[s..., t...]``
    for spins ``s`` and ``t``, the line reads ``A B | C D``: swapping ``B`` past
    ``C`` acquaints ``B`` with ``C``, then ``A`` meets ``C`` while ``B`` meets
    ``D`` in parallel. Only ``A x D`` (unequal spins) is never met, saving
    ``|A||D|`` swaps over the full network. ``None`` when sorting the blocks
    costs more than that."""
    best, best_cost = None, len(m[:left]) * len(m[left:])
    for s in (UP, DOWN):
        key = lambda q: orbitals[q].spin != s  # noqa: E731
        lb, rb = sorted(m[:left], key=key), sorted(m[left:], key=key)
        a = sum(not key(q) for q in lb)
        b, c = left - a, sum(not key(q) for q in rb)
        d = len(rb) - c
        layers = routing_layers(m, tuple(lb + rb))
        stage = [(b, c, a)], [(a, c, 0), (b, d, a + c)]
        for group in stage:
            parts = [bipartite_layers([1] * x, [1] * y, off) for x, y, off in group if x and y]
            layers.extend(merge_layers(*parts) if parts else [])
        cost = _swaps_in(layers)
        if cost < best_cost:
            best, best_cost = layers, cost
    return best


def uccsd_network(split: OccupationSplit) -> SwapNetwork:
    """Every double excitation and every single excitation of ``split`` gets
    an opportunity (widths 4 and 2)."""
    eta, n = split.eta, split.n
    layers = _pair_pair_layers(eta, n - eta, tuple(range(n)))
    return SwapNetwork(n, None, tuple(layers), "fermionic")


def uccsd_spin_network(split: OccupationSplit) -> SwapNetwork:
    """Spin-adapted variant: a bipartite stage runs only when some occupied
    pair and some virtual pair currently grouped share a spin-up count, and
    the singles stage skips unequal-spin pairs when that saves swaps."""
    orbitals = uccsd_orbitals(split)

    def wanted(occ, vir):
        return bool({_num_up(p, orbitals) for p in occ} & {_num_up(p, orbitals) for p in vir})

    eta, n = split.eta, split.n
    if eta % 2 or n % 2:
        raise StructuralError(f"spin adaptation needs even eta and n, got eta={eta}, n={n}")
    singles = lambda m, left: _same_spin_singles(m, left, orbitals)  # noqa: E731
    layers = _pair_pair_layers(eta, n - eta, tuple(range(n)), wanted, singles)
    return SwapNetwork(n, None, tuple(layers), "fermionic")


def uccgsd_orbitals(n: int, spin_adapted: bool = False) -> list[SpinOrbital]:
    """Without spin adaptation spins alternate up, down along the ids. With it,
    ids below ``n / 2`` are spin up and the rest spin down."""
    if spin_adapted:
        h = n // 2
        return [SpinOrbital(q % h, UP if q < h else DOWN) for q in range(n)]
    return [SpinOrbital(q // 2, UP if q % 2 == 0 else DOWN) for q in range(n)]


def uccgsd_gateset(n: int, spin_adapted: bool = False) -> GateSet:
    """Generalized singles (pairs) and doubles (quadruples) over ``n`` spin
    orbitals; spin adaptation keeps same-spin pairs and quadruples with an even
    number of spin-up orbitals."""
    orbitals = uccgsd_orbitals(n, spin_adapted)
    edges = []
    for pair in itertools.combinations(range(n), 2):
        if not spin_adapted or orbitals[pair[0]].spin == orbitals[pair[1]].spin:
            edges.append(pair)
    for quad in itertools.combinations(range(n), 4):
        if not spin_adapted or _num_up(quad, orbitals) % 2 == 0:
            edges.append(quad)
    return GateSet(n, frozenset(edges), allow_nested=True)


def uccgsd_network(n: int, spin_adapted: bool = False) -> SwapNetwork:
    """Without spin adaptation this is the 4-complete network keeping its lower
    opportunities. With it, 4-complete networks run on the spin-up and
    spin-down halves in parallel, followed by a pair-by-pair bipartite stage
    between the halves."""
    if n < 4:
        raise StructuralError(f"generalized doubles need n >= 4, got {n}")
    if not spin_adapted:
        net = k_complete(n, 4, keep_lower=True)
        return SwapNetwork(n, None, net.layers, "fermionic")
    if n % 2:
        raise StructuralError(f"spin-adapted network needs even n, got {n}")
    h = n // 2
    halves = []
    for off in (0, h):
        if h >= 2:
            sub = k_complete(h, min(4, h), keep_lower=True).layers
            halves.append([Layer(tuple(shift_op(op, off) for op in l.ops)) for l in sub])
    layers = merge_layers(*halves)
    m = tuple(range(n))
    for layer in layers:
        m = apply_layer(m, layer)
    # the pair stage is indifferent to the order inside each half
    layers.extend(_pair_pair_layers(h, h, m))
    return SwapNetwork(n, None, tuple(layers), "fermionic")


def upccgsd_orbitals(spatial_count: int) -> list[SpinOrbital]:
    """Id ``2p`` is spatial orbital ``p`` spin up, id ``2p + 1`` spin down."""
    return [SpinOrbital(q // 2, UP if q % 2 == 0 else DOWN) for q in range(2 * spatial_count)]


def upccgsd_gateset(spatial_count: int) -> GateSet:
    """Paired doubles ``{p up, p down, q up, q down}`` and same-spin
    generalized singles."""
    edges = []
    for p, q in itertools.combinations(range(spatial_count), 2):
        edges.append((2 * p, 2 * p + 1, 2 * q, 2 * q + 1))
        edges.append((2 * p, 2 * q))
        edges.append((2 * p + 1, 2 * q + 1))
    return GateSet(2 * spatial_count, frozenset(edges), allow_nested=True)


def upccgsd_initial(spatial_count: int) -> tuple:
    """Sites ``4m .. 4m + 3`` hold ``2m up, 2m+1 up, 2m down, 2m+1 down``, so
    both spin orbitals of a spatial orbital sit two sites apart."""
    m = []
    for p in range(0, spatial_count - 1, 2):
        m.extend([2 * p, 2 * p + 2, 2 * p + 1, 2 * p + 3])
    return tuple(m)


def _pack(starts: list[int], width: int) -> list[Layer]:
    """Greedy packing of same-width windows into layers of disjoint ones."""
    out = []
    while starts:
        chosen, rest, end = [], [], -1
        for s in starts:
            if s > end:
                chosen.append(AcquaintOp(s, width))
                end = s + width - 1
            else:
                rest.append(s)
        out.append(Layer(tuple(chosen)))
        starts = rest
    return out


def upccgsd_network(spatial_count: int, repeats: int = 1) -> SwapNetwork:
    """2-CCL network on the spin orbitals from :func:`upccgsd_initial`, keeping
    its pair opportunities. Before every other swap layer a width-4
    opportunity goes on each window holding both spin orbitals of two spatial
    orbitals. ``repeats`` stacks that many copies, each continuing from where
    the previous one ended."""
    if spatial_count < 2 or spatial_count % 2 or repeats < 1:
        raise StructuralError(
            f"need even spatial_count >= 2 and repeats >= 1, got {spatial_count}, {repeats}")
    n = 2 * spatial_count
    start = upccgsd_initial(spatial_count)
    m = start
    layers = []
    for _ in range(repeats):
        t = 0
        for layer in ccl2_layers(n):
            if layer.swaps:
                if t % 2 == 0:
                    found = [s for s in range(n - 3) if len({m[s + i] // 2 for i in range(4)}) == 2]
                    layers.extend(_pack(found, 4))
                t += 1
            layers.append(layer)
            m = apply_layer(m, layer)
    return SwapNetwork(n, start, tuple(layers), "fermionic")
