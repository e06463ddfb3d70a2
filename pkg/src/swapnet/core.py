"""Intermediate representation for swap networks on a line of qubits.

Sites and logical ids are 0-indexed throughout. A mapping is stored as a
tuple ``m`` with ``m[site] = logical id``.

A network is an initial mapping plus an ordered list of layers. Each layer
holds ops on pairwise disjoint windows of contiguous sites:

* :class:`SwapOp` exchanges two adjacent blocks, preserving the order inside
  each block (a standard swap is ``SwapOp(p, 1, 1)``).
* :class:`AcquaintOp` marks an acquaintance opportunity: the logical ids
  sitting in its window are contiguous at that point, so a gate on them may be
  placed there. A tagged opportunity is a scheduled gate.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Mapping as TMapping, Sequence, Union

Mapping = tuple  # site -> logical id
Edge = tuple  # sorted tuple of logical ids

FORMAT = "swapnet-v1"


class SwapNetError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(SwapNetError):
    """An op lies outside the line, or two ops in one layer overlap."""


class GateSetError(SwapNetError):
    """A gate set violates the hypergraph conventions."""


class CoverageError(SwapNetError):
    """A hyperedge has no acquaintance opportunity in the network."""


class CostModelError(SwapNetError):
    """The cost model lacks a duration for a locality in use."""


class SizeLimitError(SwapNetError):
    """The instance exceeds a resource cap of an exact method."""


@dataclass(frozen=True)
class LineLayout:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError(f"line needs at least one site, got {self.n}")

    def adjacent(self, i: int, j: int) -> bool:
        return abs(i - j) == 1 and 0 <= min(i, j) and max(i, j) < self.n


@dataclass(frozen=True)
class SwapOp:
    position: int
    left_size: int = 1
    right_size: int = 1

    def __post_init__(self):
        if self.position < 0 or self.left_size < 1 or self.right_size < 1:
            raise StructuralError(f"invalid swap {self}")

    @property
    def width(self) -> int:
        return self.left_size + self.right_size

    @property
    def is_standard(self) -> bool:
        return self.left_size == 1 and self.right_size == 1


@dataclass(frozen=True)
class AcquaintOp:
    position: int
    width: int
    tag: Edge | None = None

    def __post_init__(self):
        if self.position < 0 or self.width < 2:
            raise StructuralError(f"invalid acquaintance opportunity {self}")
        if self.tag is not None and not isinstance(self.tag, tuple):
            object.__setattr__(self, "tag", tuple(self.tag))


Op = Union[SwapOp, AcquaintOp]


def window(op: Op) -> range:
    return range(op.position, op.position + op.width)


@dataclass(frozen=True)
class Layer:
    ops: tuple = ()

    def __post_init__(self):
        ops = tuple(sorted(self.ops, key=lambda o: o.position))
        object.__setattr__(self, "ops", ops)
        for a, b in zip(ops, ops[1:]):
            if a.position + a.width > b.position:
                raise StructuralError(f"overlapping ops in layer: {a} and {b}")

    @property
    def swaps(self) -> tuple:
        return tuple(op for op in self.ops if isinstance(op, SwapOp))

    @property
    def acquaintances(self) -> tuple:
        return tuple(op for op in self.ops if isinstance(op, AcquaintOp))

    def __bool__(self) -> bool:
        return bool(self.ops)


@dataclass(frozen=True)
class SwapNetwork:
    """Initial mapping plus ordered layers on a line of ``n`` sites.

    ``swap_kind`` is ``"logical"`` or ``"fermionic"``; it changes how the swaps
    are interpreted (qubit swap versus fermionic swap) but never the structure.
    """

    n: int
    initial: Mapping = None
    layers: tuple = ()
    swap_kind: str = "logical"

    def __post_init__(self):
        LineLayout(self.n)
        initial = tuple(range(self.n)) if self.initial is None else tuple(self.initial)
        check_mapping(initial, self.n)
        object.__setattr__(self, "initial", initial)
        layers = tuple(l if isinstance(l, Layer) else Layer(tuple(l)) for l in self.layers)
        object.__setattr__(self, "layers", layers)
        if self.swap_kind not in ("logical", "fermionic"):
            raise StructuralError(f"unknown swap kind {self.swap_kind!r}")
        for t, layer in enumerate(layers):
            for op in layer.ops:
                if op.position + op.width > self.n:
                    raise StructuralError(
                        f"layer {t}: {op} exceeds line of {self.n} sites")

    @property
    def layout(self) -> LineLayout:
        return LineLayout(self.n)

    def ops(self) -> Iterator[tuple[int, Op]]:
        for t, layer in enumerate(self.layers):
            for op in layer.ops:
                yield t, op

    def with_layers(self, layers: Iterable) -> "SwapNetwork":
        return replace(self, layers=tuple(layers))

    def to_json(self) -> dict:
        return network_to_json(self)


def check_mapping(m: Sequence[int], n: int | None = None) -> None:
    n = len(m) if n is None else n
    if len(m) != n or sorted(m) != list(range(n)):
        raise StructuralError(f"not a bijection on {n} items: {tuple(m)}")


def identity(n: int) -> Mapping:
    return tuple(range(n))


def inverse(m: Mapping) -> Mapping:
    """Logical id -> site."""
    inv = [0] * len(m)
    for site, q in enumerate(m):
        inv[q] = site
    return tuple(inv)


def apply_layer(m: Mapping, layer: Layer | Iterable[Op]) -> Mapping:
    """Apply one layer to a mapping.

    Each ``SwapOp(p, k1, k2)`` turns the window contents ``(a1..ak1, b1..bk2)``
    into ``(b1..bk2, a1..ak1)``; acquaintance opportunities leave it unchanged.
    """
    if not isinstance(layer, Layer):
        layer = Layer(tuple(layer))
    out = list(m)
    for op in layer.ops:
        if op.position + op.width > len(m):
            raise StructuralError(f"{op} exceeds line of {len(m)} sites")
        if isinstance(op, SwapOp):
            p, k1 = op.position, op.left_size
            end = p + op.width
            out[p:end] = m[p + k1:end] + m[p:p + k1]
    return tuple(out)


def track(net: SwapNetwork) -> list[Mapping]:
    """Mappings at every layer boundary; ``result[t]`` is seen by layer ``t``."""
    maps = [net.initial]
    for layer in net.layers:
        maps.append(apply_layer(maps[-1], layer))
    return maps


def net_permutation(net: SwapNetwork) -> Mapping:
    m = net.initial
    for layer in net.layers:
        m = apply_layer(m, layer)
    return m


def mirror_op(op: Op, n: int) -> Op:
    """Reflect an op through the centre of the line."""
    p = n - op.position - op.width
    if isinstance(op, SwapOp):
        return SwapOp(p, op.right_size, op.left_size)
    return replace(op, position=p)


def mirror_layer(layer: Layer, n: int) -> Layer:
    return Layer(tuple(mirror_op(op, n) for op in layer.ops))


def shift_op(op: Op, offset: int) -> Op:
    return replace(op, position=op.position + offset)


def merge_layers(*sequences: Sequence[Sequence[Op]]) -> list[Layer]:
    """Zip layer sequences acting on disjoint sites into one sequence."""
    merged = []
    for group in itertools.zip_longest(*sequences, fillvalue=()):
        ops = tuple(op for layer in group for op in (layer.ops if isinstance(layer, Layer) else layer))
        if ops:
            merged.append(Layer(ops))
    return merged


# -- generalized swap decomposition ------------------------------------------

def swap_wave(position: int, k1: int, k2: int) -> list[list[SwapOp]]:
    """Standard-swap layers implementing ``SwapOp(position, k1, k2)``.

    The ``i``-th element from the right of the left block meets the ``j``-th
    element of the right block at step ``i + j``, giving ``k1 * k2`` swaps in
    depth ``k1 + k2 - 1``.
    """
    steps = [[] for _ in range(k1 + k2 - 1)]
    for i in range(k1):
        for j in range(k2):
            steps[i + j].append(SwapOp(position + k1 - 1 - i + j))
    return steps


def decompose(net: SwapNetwork) -> SwapNetwork:
    """Rewrite every generalized swap into standard swaps.

    Acquaintance opportunities of a layer are kept in the first sub-layer.
    """
    layers = []
    for layer in net.layers:
        waves = [swap_wave(op.position, op.left_size, op.right_size) for op in layer.swaps]
        subs = merge_layers(*waves) if waves else []
        acq = layer.acquaintances
        if acq:
            if subs:
                subs[0] = Layer(subs[0].ops + acq)
            else:
                subs = [Layer(acq)]
        layers.extend(subs)
    return net.with_layers(layers)


def strip_opportunities(net: SwapNetwork, keep_tagged: bool = True) -> SwapNetwork:
    """Drop untagged opportunities (and all of them unless ``keep_tagged``)."""
    layers = []
    for layer in net.layers:
        ops = tuple(op for op in layer.ops
                    if isinstance(op, SwapOp) or (keep_tagged and op.tag is not None))
        if ops:
            layers.append(Layer(ops))
    return net.with_layers(layers)


def cancel_adjacent_swaps(net: SwapNetwork) -> SwapNetwork:
    """Peephole pass removing back-to-back identical standard swaps.

    Two ``SwapOp(p, 1, 1)`` cancel when no op touches sites ``p`` or ``p + 1``
    between them. Layers left empty are dropped.
    """
    ops = [list(layer.ops) for layer in net.layers]
    last = {}  # site -> (layer index, op) of the latest op touching it
    removed = set()
    for t, layer_ops in enumerate(ops):
        for op in layer_ops:
            sites = list(window(op))
            if isinstance(op, SwapOp) and op.is_standard:
                a, b = last.get(sites[0]), last.get(sites[1])
                if a is not None and a is b and a[1] == op and (a[0], a[1]) not in removed:
                    removed.add((a[0], a[1]))
                    removed.add((t, op))
                    for s in sites:
                        del last[s]
                    continue
            entry = (t, op)
            for s in sites:
                last[s] = entry
    layers = []
    for t, layer_ops in enumerate(ops):
        kept = tuple(op for op in layer_ops if (t, op) not in removed)
        if kept:
            layers.append(Layer(kept))
    return net.with_layers(layers)


# -- gate sets ------------------------------------------------------------------

@dataclass(frozen=True)
class GateSet:
    """Hypergraph of logical-id subsets to acquaint, one gate per subset.

    By default no edge may be a subset of another; ``allow_nested`` lifts that
    rule for families that keep lower-locality terms as separate gates.
    """

    n: int
    edges: frozenset = frozenset()
    allow_nested: bool = False

    def __post_init__(self):
        raw = list(self.edges)
        edges = []
        for e in raw:
            e = tuple(sorted(e))
            if len(e) < 2:
                raise GateSetError(f"edge {e} has fewer than two qubits")
            if len(set(e)) != len(e):
                raise GateSetError(f"edge {e} repeats a qubit")
            if e[0] < 0 or e[-1] >= self.n:
                raise GateSetError(f"edge {e} outside 0..{self.n - 1}")
            edges.append(e)
        if len(set(edges)) != len(edges):
            dup = [e for e in set(edges) if edges.count(e) > 1]
            raise GateSetError(f"duplicate edges: {sorted(dup)}")
        edges = frozenset(edges)
        if not self.allow_nested:
            sizes = sorted({len(e) for e in edges})
            for e in edges:
                for size in sizes:
                    if size >= len(e):
                        break
                    for f in itertools.combinations(e, size):
                        if f in edges:
                            raise GateSetError(f"edge {f} is contained in edge {e}")
        object.__setattr__(self, "edges", edges)

    @property
    def locality(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (len(e), e))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.sorted_edges())

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edges


def complete_gateset(n: int, k: int) -> GateSet:
    return GateSet(n, frozenset(itertools.combinations(range(n), k)))


def qaoa_gateset(k: int, n: int, mode: str = "complete",
                 edges: Iterable[Iterable[int]] | None = None) -> GateSet:
    """Gate set of a QAOA phase separator for a k-CSP on ``n`` qubits.

    ``mode="complete"`` gives all ``C(n, k)`` k-subsets; ``mode="explicit"``
    validates the given term supports.
    """
    if not 2 <= k <= n:
        raise GateSetError(f"need 2 <= k <= n, got k={k}, n={n}")
    if mode == "complete":
        return complete_gateset(n, k)
    if mode == "explicit":
        edges = [tuple(e) for e in (edges or ())]
        if any(len(e) > k for e in edges):
            raise GateSetError(f"explicit edges exceed locality {k}")
        return GateSet(n, edges)
    raise GateSetError(f"unknown mode {mode!r}")


# -- scheduling -------------------------------------------------------------------

def opportunities(net: SwapNetwork, g: GateSet) -> dict[Edge, list[tuple[int, int]]]:
    """For each edge of ``g``, the ``(layer, position)`` pairs whose window
    holds exactly that edge's logical ids, in layer-major order."""
    wanted = {frozenset(e): e for e in g.edges}
    found = {e: [] for e in g.edges}
    m = net.initial
    for t, layer in enumerate(net.layers):
        for op in layer.ops:
            if isinstance(op, AcquaintOp):
                e = wanted.get(frozenset(m[op.position:op.position + op.width]))
                if e is not None:
                    found[e].append((t, op.position))
        m = apply_layer(m, layer)
    return found


def schedule_gates(net: SwapNetwork, g: GateSet, policy: str = "first",
                   seed: int | None = None) -> SwapNetwork:
    """Tag exactly one acquaintance opportunity per edge of ``g``.

    ``policy="first"`` picks the earliest layer, then the leftmost position.
    ``policy="random"`` picks uniformly among an edge's opportunities using a
    private RNG seeded with ``seed``. Existing tags are cleared first.
    """
    if g.n != net.n:
        raise GateSetError(f"gate set on {g.n} qubits, network on {net.n} sites")
    found = opportunities(net, g)
    missing = sorted(e for e, opps in found.items() if not opps)
    if missing:
        raise CoverageError(f"no acquaintance opportunity for {missing[0]}"
                            + (f" (and {len(missing) - 1} more)" if len(missing) > 1 else ""))
    if policy == "first":
        choice = {e: opps[0] for e, opps in found.items()}
    elif policy == "random":
        rng = random.Random(seed)
        choice = {e: rng.choice(found[e]) for e in g.sorted_edges()}
    else:
        raise ValueError(f"unknown policy {policy!r}")
    tag_at = {slot: e for e, slot in choice.items()}
    layers = []
    for t, layer in enumerate(net.layers):
        ops = []
        for op in layer.ops:
            if isinstance(op, AcquaintOp):
                op = replace(op, tag=tag_at.get((t, op.position)))
            ops.append(op)
        layers.append(Layer(tuple(ops)))
    return net.with_layers(layers)


def tagged_gates(net: SwapNetwork) -> list[tuple[int, AcquaintOp]]:
    """Tagged opportunities in layer-major, left-to-right order."""
    return [(t, op) for t, op in net.ops() if isinstance(op, AcquaintOp) and op.tag is not None]


# -- cost --------------------------------------------------------------------------

@dataclass(frozen=True)
class CostModel:
    """Duration ``tau[k]`` of a k-local gate; ``tau=None`` means unit cost."""

    tau: TMapping[int, float] | None = None

    def duration(self, k: int) -> float:
        if self.tau is None:
            return 1.0
        try:
            return float(self.tau[k])
        except KeyError:
            raise CostModelError(f"no duration for {k}-local gates") from None


@dataclass(frozen=True)
class CostSummary:
    total_duration: float
    swap_depth: int
    layer_count: int
    swap_count: int
    gate_count: int

    def as_dict(self) -> dict:
        return dict(total_duration=self.total_duration, swap_depth=self.swap_depth,
                    layer_count=self.layer_count, swap_count=self.swap_count,
                    gate_count=self.gate_count)


def swap_depth(net: SwapNetwork) -> int:
    return sum(max((op.width - 1 for op in layer.swaps), default=0) for layer in net.layers)


def swap_count(net: SwapNetwork) -> int:
    return sum(op.left_size * op.right_size for _, op in net.ops() if isinstance(op, SwapOp))


def cost(net: SwapNetwork, cm: CostModel | None = None, merge_swap_into_gate: bool = False) -> CostSummary:
    """Duration and size counts of a network.

    A layer lasts as long as its slowest op; a ``(k1, k2)``-swap lasts
    ``(k1 + k2 - 1) * tau[2]`` and untagged opportunities last nothing. With
    ``merge_swap_into_gate`` a tagged opportunity directly followed by a
    standard swap on the same window is fused into that swap.
    """
    cm = cm or CostModel()
    localities = {op.width for _, op in net.ops() if isinstance(op, AcquaintOp)}
    if any(isinstance(op, SwapOp) for _, op in net.ops()):
        localities.add(2)
    tau = {k: cm.duration(k) for k in sorted(localities)}

    layers = net.layers
    merged = set()
    fused = {}  # (layer, position) of a swap -> duration of the gate fused into it
    if merge_swap_into_gate:
        for t in range(len(layers) - 1):
            nxt = {op.position: op for op in layers[t + 1].swaps if op.is_standard}
            for op in layers[t].acquaintances:
                if op.tag is not None and op.width == 2 and op.position in nxt:
                    merged.add((t, op.position))
                    fused[(t + 1, op.position)] = tau[2]

    total = 0.0
    for t, layer in enumerate(layers):
        longest = 0.0
        for op in layer.ops:
            if isinstance(op, SwapOp):
                d = (op.width - 1) * tau[2]
                d = max(d, fused.get((t, op.position), 0.0))
            elif op.tag is not None and (t, op.position) not in merged:
                d = tau[op.width]
            else:
                d = 0.0
            longest = max(longest, d)
        total += longest
    return CostSummary(
        total_duration=total,
        swap_depth=swap_depth(net),
        layer_count=len(layers),
        swap_count=swap_count(net),
        gate_count=len(tagged_gates(net)),
    )


# -- JSON interchange --------------------------------------------------------------

def network_to_json(net: SwapNetwork) -> dict:
    layers = []
    for layer in net.layers:
        ops = []
        for op in layer.ops:
            if isinstance(op, SwapOp):
                ops.append({"op": "swap", "p": op.position, "k1": op.left_size, "k2": op.right_size})
            else:
                d = {"op": "acq", "p": op.position, "w": op.width}
                if op.tag is not None:
                    d["tag"] = list(op.tag)
                ops.append(d)
        layers.append(ops)
    return {"format": FORMAT, "n": net.n, "swap_kind": net.swap_kind,
            "initial": list(net.initial), "layers": layers}


def network_from_json(data: dict) -> SwapNetwork:
    if not isinstance(data, dict) or data.get("format") != FORMAT:
        raise StructuralError(f"expected a {FORMAT} document")
    try:
        layers = []
        for raw in data["layers"]:
            ops = []
            for d in raw:
                if d["op"] == "swap":
                    ops.append(SwapOp(int(d["p"]), int(d["k1"]), int(d["k2"])))
                elif d["op"] == "acq":
                    tag = d.get("tag")
                    ops.append(AcquaintOp(int(d["p"]), int(d["w"]),
                                          None if tag is None else tuple(int(x) for x in tag)))
                else:
                    raise StructuralError(f"unknown op {d['op']!r}")
            layers.append(Layer(tuple(ops)))
        return SwapNetwork(int(data["n"]), tuple(int(x) for x in data["initial"]),
                           tuple(layers), data.get("swap_kind", "logical"))
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed network document: {exc}") from exc
