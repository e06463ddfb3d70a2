"""Lower bounds on acquaintance time.

Exact acquaintance time by breadth-first search over rounds of matchings on
tiny hosts, exact pathwidth by a dynamic program over vertex subsets, the
pathwidth bound on the path, and the minor-embedding witness that turns a
strategy into an embedding into a strong product with a path.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import SizeLimitError, StructuralError, SwapNetError, SwapNetwork

AC_HOST_LIMIT = 7
PATHWIDTH_LIMIT = 14


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise StructuralError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise StructuralError(f"edge {e} outside 0..{self.n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise StructuralError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", frozenset(seen))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        edges = [tuple(e) for e in edges]
        keys = [(min(e), max(e)) for e in edges]
        if len(set(keys)) != len(keys):
            raise StructuralError("duplicate edge in edge list")
        return cls(n, frozenset(keys))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self) -> list[set[int]]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def is_connected(self, vertices: Iterable[int] | None = None) -> bool:
        """Whether ``vertices`` (default: all) induce a connected subgraph."""
        vs = set(range(self.n) if vertices is None else vertices)
        if not vs:
            return True
        nb = self.neighbors()
        start = next(iter(vs))
        seen, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for w in nb[u] & vs:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == vs

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset(itertools.combinations(range(n), 2)))


def star_graph(leaves: int) -> SimpleGraph:
    """Vertex 0 joined to ``leaves`` leaves."""
    return SimpleGraph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def parse_graph(text: str) -> SimpleGraph:
    """A graph from JSON ``{"n": .., "edges": [[u, v], ..]}`` or from an edge
    list with one ``u v`` pair per line (``#`` starts a comment). Edge lists
    take the vertex count from the largest id."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            edges = [tuple(int(x) for x in e) for e in data["edges"]]
            n = int(data.get("n", 1 + max((max(e) for e in edges), default=-1)))
        except (ValueError, KeyError, TypeError) as exc:
            raise StructuralError(f"bad graph JSON: {exc}") from exc
        return SimpleGraph.from_edges(n, edges)
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise StructuralError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise StructuralError(f"line {lineno}: {exc}") from exc
    n = 1 + max((max(e) for e in edges), default=-1)
    return SimpleGraph.from_edges(n, edges)


# -- strategies --------------------------------------------------------------------

EMPTY = -1


@dataclass(frozen=True)
class Strategy:
    """Initial placement (host vertex -> agent, ``-1`` for an empty vertex)
    and rounds of host matchings; each round swaps the agents on its edges."""

    initial: tuple
    rounds: tuple

    def __post_init__(self):
        object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "rounds", tuple(tuple(tuple(e) for e in r) for r in self.rounds))
        for r in self.rounds:
            used = [v for e in r for v in e]
            if len(used) != len(set(used)):
                raise StructuralError(f"round {r} is not a matching")

    def validate(self, host: SimpleGraph) -> None:
        if len(self.initial) != host.n:
            raise StructuralError(f"placement on {len(self.initial)} vertices, host has {host.n}")
        agents = [a for a in self.initial if a != EMPTY]
        if len(agents) != len(set(agents)):
            raise StructuralError("placement puts an agent on two vertices")
        for r in self.rounds:
            for u, v in r:
                if not host.adjacent(u, v):
                    raise StructuralError(f"({u}, {v}) is not a host edge")

    def placements(self) -> list[tuple]:
        """Host vertex -> agent before the first round and after each round."""
        out = [self.initial]
        cur = list(self.initial)
        for r in self.rounds:
            for u, v in r:
                cur[u], cur[v] = cur[v], cur[u]
            out.append(tuple(cur))
        return out

    def acquainted(self, host: SimpleGraph, targets: Iterable[Sequence[int]]) -> set:
        """Targets whose agents form a connected host subgraph at some point."""
        targets = [tuple(t) for t in targets]
        done = set()
        for placement in self.placements():
            where = {a: v for v, a in enumerate(placement) if a != EMPTY}
            for t in targets:
                if t not in done and all(a in where for a in t) \
                        and host.is_connected(where[a] for a in t):
                    done.add(t)
        return done

    def to_json(self) -> dict:
        return {"initial": list(self.initial), "rounds": [[list(e) for e in r] for r in self.rounds]}


def _matchings(host: SimpleGraph) -> list[tuple]:
    """All nonempty matchings of ``host``."""
    edges = sorted(host.edges)
    out = []

    def extend(i, used, chosen):
        if i == len(edges):
            if chosen:
                out.append(tuple(chosen))
            return
        extend(i + 1, used, chosen)
        u, v = edges[i]
        if u not in used and v not in used:
            extend(i + 1, used | {u, v}, chosen + [edges[i]])

    extend(0, frozenset(), [])
    return out


def _automorphisms(host: SimpleGraph) -> list[tuple]:
    out = []
    for perm in itertools.permutations(range(host.n)):
        if all(host.adjacent(perm[u], perm[v]) for u, v in host.edges):
            out.append(perm)
    return out


@dataclass(frozen=True)
class AcquaintanceResult:
    rounds: int | None  # None: more than the cap
    strategy: Strategy | None

    def to_json(self) -> dict:
        return {"rounds": self.rounds,
                "strategy": self.strategy.to_json() if self.strategy else None}


def acquaintance_time_exact(target: SimpleGraph | Sequence[Sequence[int]], host: SimpleGraph,
                            round_cap: int = 10, agents: int | None = None) -> AcquaintanceResult:
    """Fewest rounds of host matchings acquainting every target edge.

    ``target`` is a graph on the agents or a list of hyperedges; a hyperedge
    is acquainted when its agents occupy a connected host subgraph, before
    the first round or after any round. The search runs level by level over
    (placement, acquainted set) states; initial placements are taken up to
    host automorphisms.
    """
    if isinstance(target, SimpleGraph):
        targets = sorted(target.edges)
        agents = target.n if agents is None else agents
    else:
        targets = sorted(tuple(sorted(t)) for t in target)
        if agents is None:
            agents = 1 + max((max(t) for t in targets), default=-1)
    if host.n > AC_HOST_LIMIT:
        raise SizeLimitError(f"exact search limited to hosts of {AC_HOST_LIMIT} vertices, got {host.n}")
    if agents > host.n:
        raise StructuralError(f"{agents} agents do not fit on {host.n} host vertices")
    full = (1 << len(targets)) - 1
    matchings = _matchings(host)

    def reached(placement: tuple) -> int:
        where = {a: v for v, a in enumerate(placement) if a != EMPTY}
        bits = 0
        for i, t in enumerate(targets):
            if host.is_connected(where[a] for a in t):
                bits |= 1 << i
        return bits

    autos = _automorphisms(host)
    starts = {}
    items = list(range(agents)) + [EMPTY] * (host.n - agents)
    for placement in set(itertools.permutations(items)):
        canon = min(tuple(placement[a[v]] for v in range(host.n)) for a in autos)
        starts.setdefault(canon, None)

    parent: dict = {}
    frontier = []
    for placement in sorted(starts):
        state = (placement, reached(placement))
        if state not in parent:
            parent[state] = None
            frontier.append(state)

    def witness(state) -> Strategy:
        rounds = []
        while parent[state] is not None:
            state, matching = parent[state]
            rounds.append(matching)
        return Strategy(state[0], tuple(reversed(rounds)))

    for depth in range(round_cap + 1):
        for state in frontier:
            if state[1] == full:
                return AcquaintanceResult(depth, witness(state))
        if depth == round_cap:
            break
        nxt = []
        for placement, bits in frontier:
            for matching in matchings:
                cur = list(placement)
                for u, v in matching:
                    cur[u], cur[v] = cur[v], cur[u]
                cur = tuple(cur)
                state = (cur, bits | reached(cur))
                if state not in parent:
                    parent[state] = ((placement, bits), matching)
                    nxt.append(state)
        frontier = nxt
    return AcquaintanceResult(None, None)


def swapnetwork_to_strategy(net: SwapNetwork) -> Strategy:
    """Each layer with swaps becomes one matching of the path on ``net.n``
    vertices; opportunity-only layers are skipped."""
    rounds = []
    for layer in net.layers:
        if not layer.swaps:
            continue
        for op in layer.swaps:
            if not op.is_standard:
                raise StructuralError("generalized swaps present; decompose the network first")
        rounds.append(tuple((op.position, op.position + 1) for op in layer.swaps))
    return Strategy(net.initial, tuple(rounds))


# -- pathwidth -----------------------------------------------------------------------

@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple  # tuple of frozensets

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def validate(self, g: SimpleGraph) -> None:
        seen_in = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                seen_in.setdefault(v, []).append(i)
        for v in range(g.n):
            idx = seen_in.get(v)
            if not idx:
                raise StructuralError(f"vertex {v} is in no bag")
            if idx != list(range(idx[0], idx[-1] + 1)):
                raise StructuralError(f"bags of vertex {v} are not contiguous")
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                raise StructuralError(f"edge ({u}, {v}) is in no bag")

    def to_json(self) -> dict:
        return {"width": self.width, "bags": [sorted(b) for b in self.bags]}


@dataclass(frozen=True)
class PathwidthResult:
    width: int
    order: tuple
    decomposition: PathDecomposition

    def to_json(self) -> dict:
        return {"pathwidth": self.width, "order": list(self.order),
                "decomposition": self.decomposition.to_json()}


def pathwidth_exact(g: SimpleGraph) -> PathwidthResult:
    """Exact pathwidth as the vertex separation number.

    For a vertex set ``S`` placed first, ``f(S)`` is the least possible
    maximum boundary size (vertices of a prefix with a neighbour outside it)
    over orderings of ``S``. The optimal order gives a certificate whose bag
    ``i`` is the boundary of the first ``i`` vertices plus vertex ``i``.
    """
    n = g.n
    if n > PATHWIDTH_LIMIT:
        raise SizeLimitError(f"exact pathwidth limited to {PATHWIDTH_LIMIT} vertices, got {n}")
    if n == 0:
        raise StructuralError("pathwidth of the empty graph is not defined here")
    nb = [0] * n
    for u, v in g.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u

    def boundary(s: int) -> int:
        return sum(1 for v in range(n) if s >> v & 1 and nb[v] & ~s)

    size = 1 << n
    best = [0] * size
    choice = [0] * size
    for s in range(1, size):
        b = boundary(s)
        val, arg = n + 1, -1
        t = s
        while t:
            low = t & -t
            v = low.bit_length() - 1
            cand = best[s ^ low]
            if cand < val:
                val, arg = cand, v
            t ^= low
        best[s] = max(val, b)
        choice[s] = arg
    order, s = [], size - 1
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()

    bags, prefix = [], 0
    for v in order:
        bags.append(frozenset([v] + [u for u in range(n) if prefix >> u & 1 and nb[u] & ~prefix]))
        prefix |= 1 << v
    dec = PathDecomposition(tuple(bags))
    return PathwidthResult(best[size - 1], tuple(order), dec)


def ac_lower_bound_from_pathwidth(g: SimpleGraph, pathwidth: int | None = None) -> int:
    """Least ``d >= 0`` with ``pw(g) <= 2 * ceil(d / 2) + 1``: any strategy
    acquainting ``g`` on a path needs at least that many rounds."""
    pw = pathwidth_exact(g).width if pathwidth is None else pathwidth
    d = 0
    while 2 * ((d + 1) // 2) + 1 < pw:
        d += 1
    return d


# -- minor embeddings -------------------------------------------------------------

def strong_product(a: SimpleGraph, b: SimpleGraph) -> SimpleGraph:
    """Vertex ``(x, y)`` is ``x * b.n + y``; distinct vertices are adjacent when
    each coordinate is equal or adjacent in its factor."""
    close_a = [{x} | nb for x, nb in enumerate(a.neighbors())]
    close_b = [{y} | nb for y, nb in enumerate(b.neighbors())]
    edges = set()
    for x in range(a.n):
        for y in range(b.n):
            u = x * b.n + y
            for x2 in close_a[x]:
                for y2 in close_b[y]:
                    v = x2 * b.n + y2
                    if u < v:
                        edges.add((u, v))
    return SimpleGraph(a.n * b.n, frozenset(edges))


@dataclass(frozen=True)
class MinorEmbedding:
    vertex_models: dict  # guest vertex -> frozenset of host vertices
    edge_models: dict  # guest edge -> host edge

    def validate(self, guest: SimpleGraph, host: SimpleGraph) -> None:
        owner = {}
        for v in range(guest.n):
            model = self.vertex_models.get(v)
            if not model:
                raise StructuralError(f"vertex {v} has an empty model")
            for x in model:
                if not 0 <= x < host.n:
                    raise StructuralError(f"model of {v} leaves the host")
                if x in owner:
                    raise StructuralError(f"models of {owner[x]} and {v} share host vertex {x}")
                owner[x] = v
            if not host.is_connected(model):
                raise StructuralError(f"model of {v} is not connected")
        for e in guest.edges:
            if e not in self.edge_models:
                raise StructuralError(f"edge {e} has no model")
            x, y = self.edge_models[e]
            if not host.adjacent(x, y):
                raise StructuralError(f"model of {e} is not a host edge")
            if {owner.get(x), owner.get(y)} != set(e):
                raise StructuralError(f"model of {e} does not join the models of its ends")

    def to_json(self) -> dict:
        return {"vertex_models": {str(v): sorted(m) for v, m in sorted(self.vertex_models.items())},
                "edge_models": [[list(e), list(h)] for e, h in sorted(self.edge_models.items())]}


def strategy_to_minor_embedding(s: Strategy, guest: SimpleGraph,
                                host: SimpleGraph) -> tuple[MinorEmbedding, SimpleGraph]:
    """Embed ``guest`` into ``host`` strong-product the path on ``d + 1``
    vertices, ``d`` the number of rounds.

    Vertex ``v`` is modelled by its positions over time, ``(sigma_t(v), t)``;
    edge ``uv`` by the first time its ends sit on adjacent host vertices.
    Returns the embedding and the product graph.
    """
    s.validate(host)
    d = len(s.rounds)
    product = strong_product(host, path_graph(d + 1))
    placements = s.placements()
    where = [{a: x for x, a in enumerate(p) if a != EMPTY} for p in placements]
    models = {}
    for v in range(guest.n):
        if v not in where[0]:
            raise StructuralError(f"guest vertex {v} is not placed")
        models[v] = frozenset(where[t][v] * (d + 1) + t for t in range(d + 1))
    edge_models = {}
    for u, v in sorted(guest.edges):
        for t in range(d + 1):
            x, y = where[t][u], where[t][v]
            if host.adjacent(x, y):
                edge_models[(u, v)] = (x * (d + 1) + t, y * (d + 1) + t)
                break
        else:
            raise SwapNetError(f"strategy never acquaints guest edge {(u, v)}")
    return MinorEmbedding(models, edge_models), product
