"""Exact checks on swap networks.

Coverage and measurement partitions come from position tracking. The dense
oracle compares a fermionic swap network carrying local gates against the
same gate product applied with nonlocal Jordan-Wigner strings under the
initial ordering; it is meant for at most 10 modes.

Jordan-Wigner convention: site ``s`` is the ``s``-th tensor factor (most
significant bit), bit 1 means occupied, and the mode at site ``s`` has
``a = Z_0 ... Z_{s-1} |0><1|_s``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .core import (
    AcquaintOp,
    Edge,
    GateSet,
    GateSetError,
    Mapping,
    SizeLimitError,
    SwapNetError,
    SwapNetwork,
    apply_layer,
    check_mapping,
    inverse,
    net_permutation,
    opportunities,
    swap_wave,
    tagged_gates,
    track,
)

ORACLE_LIMIT = 10

__all__ = [
    "CoverageReport",
    "MeasurementPartition",
    "coverage",
    "fermionic_equivalence",
    "fermionic_permutation_unitary",
    "fswap_matrix",
    "gate_hamiltonian_term",
    "jw_pauli",
    "measurement_partition",
    "network_unitary",
    "pauli_matrix",
    "reference_unitary",
    "track",
]


# -- coverage ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoverageReport:
    opportunities: dict  # edge -> list of (layer, position)
    uncovered: frozenset

    @property
    def complete(self) -> bool:
        return not self.uncovered

    @property
    def histogram(self) -> dict[int, int]:
        """Number of edges per opportunity count."""
        return dict(sorted(Counter(len(v) for v in self.opportunities.values()).items()))

    @property
    def min_multiplicity(self) -> int:
        return min((len(v) for v in self.opportunities.values()), default=0)

    def to_json(self) -> dict:
        return {
            "edges": len(self.opportunities),
            "covered": len(self.opportunities) - len(self.uncovered),
            "complete": self.complete,
            "uncovered": [list(e) for e in sorted(self.uncovered)],
            "histogram": {str(k): v for k, v in self.histogram.items()},
        }


def coverage(net: SwapNetwork, g: GateSet) -> CoverageReport:
    """Opportunities per edge: layer ``t`` at position ``p`` counts when the
    logical ids in that window before layer ``t`` equal the edge as a set."""
    if g.n != net.n:
        raise GateSetError(f"gate set on {g.n} qubits, network on {net.n} sites")
    found = opportunities(net, g)
    return CoverageReport(found, frozenset(e for e, v in found.items() if not v))


@dataclass(frozen=True)
class MeasurementPartition:
    parts: tuple  # tuple of tuples of edges

    def __post_init__(self):
        seen = set()
        for part in self.parts:
            support = set()
            for e in part:
                if support & set(e):
                    raise SwapNetError(f"edge {e} overlaps another edge of its part")
                support |= set(e)
                if e in seen:
                    raise SwapNetError(f"edge {e} appears twice")
                seen.add(e)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def to_json(self) -> dict:
        return {"parts": [[list(e) for e in part] for part in self.parts]}


def measurement_partition(net: SwapNetwork, g: GateSet) -> MeasurementPartition:
    """Group the edges of ``g`` by the layer in which they are tagged."""
    by_layer: dict[int, list] = {}
    for t, op in tagged_gates(net):
        by_layer.setdefault(t, []).append(tuple(op.tag))
    tagged = {e for part in by_layer.values() for e in part}
    missing = sorted(set(g.edges) - tagged)
    if missing:
        raise SwapNetError(f"gate {missing[0]} is not scheduled")
    return MeasurementPartition(tuple(tuple(by_layer[t]) for t in sorted(by_layer)))


# -- Jordan-Wigner -------------------------------------------------------------------

# single-qubit Pauli products: (a, b) -> (phase, a*b)
_PRODUCT = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _multiply(a: dict, b: dict) -> dict:
    out: dict[str, complex] = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            phase, chars = 1, []
            for x, y in zip(sa, sb):
                ph, z = _PRODUCT[x, y]
                phase *= ph
                chars.append(z)
            key = "".join(chars)
            out[key] = out.get(key, 0) + phase * ca * cb
    return {k: v for k, v in out.items() if abs(v) > 1e-15}


def _ladder(site: int, n: int, dagger: bool) -> dict:
    prefix = "Z" * site
    suffix = "I" * (n - site - 1)
    # |0><1| = (X + iY)/2, its adjoint (X - iY)/2
    sign = -1 if dagger else 1
    return {prefix + "X" + suffix: 0.5, prefix + "Y" + suffix: sign * 0.5j}


def jw_pauli(term: Sequence[tuple[int, bool]], ordering: Mapping,
             hermitian: bool = False, limit: int = ORACLE_LIMIT) -> dict[str, complex]:
    """Pauli expansion of a product of ladder operators.

    ``term`` lists ``(mode, dagger)`` factors left to right, so
    ``[(0, True), (1, False)]`` is ``a+_0 a_1``. ``ordering[site]`` is the mode
    at that site. With ``hermitian`` the adjoint is added. The result maps
    strings over ``IXYZ`` (site 0 first) to coefficients.
    """
    n = len(ordering)
    if n > limit:
        raise SizeLimitError(f"dense Jordan-Wigner limited to {limit} modes, got {n}")
    check_mapping(ordering)
    site = inverse(ordering)
    out = {"I" * n: 1.0}
    for mode, dagger in term:
        if not 0 <= mode < n:
            raise SwapNetError(f"mode {mode} outside 0..{n - 1}")
        out = _multiply(out, _ladder(site[mode], n, dagger))
    if hermitian:
        adj = jw_pauli([(q, not d) for q, d in reversed(term)], ordering, limit=limit)
        for k, v in adj.items():
            out[k] = out.get(k, 0) + v
        out = {k: v for k, v in out.items() if abs(v) > 1e-15}
    return out


def pauli_matrix(paulis: dict[str, complex]) -> np.ndarray:
    """Dense matrix of a weighted sum of Pauli strings."""
    n = len(next(iter(paulis)))
    out = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for s, c in paulis.items():
        m = np.ones((1, 1), dtype=complex)
        for ch in s:
            m = np.kron(m, _MATRICES[ch])
        out += c * m
    return out


def gate_hamiltonian_term(edge: Edge) -> tuple[list[tuple[int, bool]], tuple[int, ...]]:
    """Ladder factors and number-operator modes of the generator on ``edge``.

    With ``k = len(edge)`` and ``h = k // 2``, the first ``h`` modes are
    created and the next ``h`` annihilated; for odd ``k`` the last mode
    contributes a number operator. The generator is
    ``(a+ ... a+ a ... a + h.c.) * n_last``.
    """
    edge = tuple(sorted(edge))
    h = len(edge) // 2
    factors = [(q, True) for q in edge[:h]] + [(q, False) for q in edge[h:2 * h]]
    return factors, edge[2 * h:]


def _generator(edge: Edge, ordering: Mapping, rename: dict | None = None) -> np.ndarray:
    """Dense generator of ``edge`` under ``ordering``; ``rename`` maps the
    edge's modes to the labels used in ``ordering``."""
    factors, numbers = gate_hamiltonian_term(edge)
    r = rename or {q: q for q in edge}
    paulis = jw_pauli([(r[q], d) for q, d in factors], ordering, hermitian=True)
    for q in numbers:
        paulis = _multiply(paulis, jw_pauli([(r[q], True), (r[q], False)], ordering))
    return pauli_matrix(paulis)


def fswap_matrix() -> np.ndarray:
    """Fermionic swap on two adjacent sites, basis ``|00>, |01>, |10>, |11>``."""
    return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], dtype=complex)


def _apply_fswap(u: np.ndarray, site: int, n: int) -> np.ndarray:
    """Left-multiply ``u`` by the fermionic swap on ``site, site + 1``."""
    idx = np.arange(2 ** n)
    hi, lo = n - 1 - site, n - 2 - site
    b1, b2 = (idx >> hi) & 1, (idx >> lo) & 1
    swapped = idx ^ ((b1 ^ b2) << hi) ^ ((b1 ^ b2) << lo)
    sign = np.where(b1 & b2, -1, 1)
    out = np.empty_like(u)
    out[swapped] = u * sign[:, None]
    return out


def _embed(local: np.ndarray, start: int, width: int, n: int) -> np.ndarray:
    return np.kron(np.kron(np.eye(2 ** start), local), np.eye(2 ** (n - start - width)))


def fermionic_permutation_unitary(before: Mapping, after: Mapping) -> np.ndarray:
    """Signed permutation taking the Fock basis under ordering ``before`` to
    the same states under ordering ``after``.

    A basis state is ``prod a+_s |0>`` over occupied sites in increasing
    order; relabelling the sites reorders the creation operators and the sign
    is the parity of that reordering.
    """
    n = len(before)
    if n > ORACLE_LIMIT:
        raise SizeLimitError(f"dense oracle limited to {ORACLE_LIMIT} modes, got {n}")
    where = inverse(after)
    u = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for col in range(2 ** n):
        occ = [s for s in range(n) if (col >> (n - 1 - s)) & 1]
        new_sites = [where[before[s]] for s in occ]
        inversions = sum(1 for i in range(len(new_sites)) for j in range(i + 1, len(new_sites))
                         if new_sites[i] > new_sites[j])
        row = sum(1 << (n - 1 - s) for s in new_sites)
        u[row, col] = (-1) ** inversions
    return u


def network_unitary(net: SwapNetwork, coeffs: dict | None = None) -> np.ndarray:
    """Dense unitary of ``net`` read as fermionic swaps, with each tagged
    opportunity applying ``exp(-i c H)`` locally on its window."""
    n = net.n
    if n > ORACLE_LIMIT:
        raise SizeLimitError(f"dense oracle limited to {ORACLE_LIMIT} modes, got {n}")
    coeffs = coeffs or {}
    u = np.eye(2 ** n, dtype=complex)
    m = net.initial
    for layer in net.layers:
        for op in layer.ops:
            if isinstance(op, AcquaintOp):
                if op.tag is None:
                    continue
                # the window alone, its modes renamed 0..w-1 in site order
                window = m[op.position:op.position + op.width]
                rename = {q: i for i, q in enumerate(window)}
                local = _generator(tuple(op.tag), tuple(range(op.width)), rename)
                gate = expm(-1j * coeffs.get(tuple(op.tag), 0.0) * local)
                u = _embed(gate, op.position, op.width, n) @ u
            else:
                for step in swap_wave(op.position, op.left_size, op.right_size):
                    for s in step:
                        u = _apply_fswap(u, s.position, n)
        m = apply_layer(m, layer)
    return u


def reference_unitary(net: SwapNetwork, coeffs: dict | None = None) -> np.ndarray:
    """Dense product of the tagged gates in tag order, each applied with its
    full Jordan-Wigner string under the initial ordering and no swaps."""
    n = net.n
    if n > ORACLE_LIMIT:
        raise SizeLimitError(f"dense oracle limited to {ORACLE_LIMIT} modes, got {n}")
    coeffs = coeffs or {}
    u = np.eye(2 ** n, dtype=complex)
    for _, op in tagged_gates(net):
        h = _generator(tuple(op.tag), net.initial)
        u = expm(-1j * coeffs.get(tuple(op.tag), 0.0) * h) @ u
    return u


def fermionic_equivalence(net: SwapNetwork, coeffs: dict | None = None) -> float:
    """Spectral-norm distance between the network's unitary, followed by the
    inverse of its net fermionic permutation, and the nonlocal reference."""
    u_net = network_unitary(net, coeffs)
    perm = fermionic_permutation_unitary(net.initial, net_permutation(net))
    u_ref = reference_unitary(net, coeffs)
    return float(np.linalg.norm(perm.conj().T @ u_net - u_ref, 2))
