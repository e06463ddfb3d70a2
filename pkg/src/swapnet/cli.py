"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 refusal
because an instance exceeds a size cap.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import bounds, complete, primitives, ucc
from .core import (
    AcquaintOp,
    CostModel,
    GateSet,
    SizeLimitError,
    SwapNetError,
    SwapNetwork,
    complete_gateset,
    cost,
    decompose,
    network_from_json,
    network_to_json,
    schedule_gates,
)
from .verify import coverage

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

FAMILIES = ("ccl2", "kcomplete", "alt3", "partition", "bipartite", "uccsd", "uccsd-spin",
            "uccgsd", "upccgsd", "permutation")


class InputError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SWAPNET_SEED")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError as exc:
        raise InputError(f"SWAPNET_SEED must be an integer, got {env!r}") from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for {args.family}")


def build(args) -> tuple[SwapNetwork, GateSet | None]:
    """The requested network and its natural gate set (if any)."""
    fam = args.family
    if fam == "ccl2":
        _need(args, "n")
        return primitives.canonical_2ccl(args.n), complete_gateset(args.n, 2)
    if fam == "kcomplete":
        _need(args, "n", "k")
        return complete.k_complete(args.n, args.k, args.keep_lower), complete_gateset(args.n, args.k)
    if fam == "alt3":
        _need(args, "n")
        return complete.alt_three_local(args.n), complete_gateset(args.n, 3)
    if fam == "partition":
        _need(args, "parts")
        return primitives.canonical_partition_network(_ints(args.parts)), None
    if fam == "bipartite":
        _need(args, "left", "right")
        b = primitives.Bipartition(tuple(_ints(args.left)), tuple(_ints(args.right)))
        return primitives.bipartite_network(b), None
    if fam in ("uccsd", "uccsd-spin"):
        _need(args, "eta", "n")
        split = ucc.OccupationSplit(args.eta, args.n)
        if fam == "uccsd":
            return ucc.uccsd_network(split), ucc.uccsd_gateset(split)
        return ucc.uccsd_spin_network(split), ucc.uccsd_gateset(split, spin_adapted=True)
    if fam == "uccgsd":
        _need(args, "n")
        return ucc.uccgsd_network(args.n, args.spin), ucc.uccgsd_gateset(args.n, args.spin)
    if fam == "upccgsd":
        _need(args, "spatial")
        return ucc.upccgsd_network(args.spatial, args.repeats), ucc.upccgsd_gateset(args.spatial)
    if fam == "permutation":
        if args.target is not None:
            target = _ints(args.target)
        else:
            _need(args, "n")
            target = list(range(args.n))
            random.Random(_seed(args)).shuffle(target)
        return primitives.route_permutation(tuple(target)), None
    raise InputError(f"unknown family {fam!r}")


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def load_network(path: str) -> SwapNetwork:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    return network_from_json(data)


def parse_gateset(spec: str, n: int) -> GateSet:
    """``pairs``, ``complete:K``, ``uccsd:ETA``, ``uccsd-spin:ETA``, ``uccgsd``,
    ``uccgsd-spin``, ``upccgsd``, or a path to a JSON list of edges."""
    name, _, arg = spec.partition(":")
    try:
        if name == "pairs":
            return complete_gateset(n, 2)
        if name == "complete":
            return complete_gateset(n, int(arg))
        if name in ("uccsd", "uccsd-spin"):
            return ucc.uccsd_gateset(ucc.OccupationSplit(int(arg), n), name == "uccsd-spin")
        if name in ("uccgsd", "uccgsd-spin"):
            return ucc.uccgsd_gateset(n, name == "uccgsd-spin")
        if name == "upccgsd":
            if n % 2:
                raise InputError("upccgsd gate set needs an even site count")
            return ucc.upccgsd_gateset(n // 2)
    except ValueError as exc:
        raise InputError(f"bad gate set spec {spec!r}: {exc}") from exc
    try:
        data = json.loads(_read_text(spec))
        edges = data["edges"] if isinstance(data, dict) else data
        return GateSet(n, frozenset(tuple(sorted(int(q) for q in e)) for e in edges))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad gate set file {spec!r}: {exc}") from exc


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=None if out is None else 1)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_generate(args) -> int:
    net, natural = build(args)
    if args.schedule:
        g = natural if args.gates is None else parse_gateset(args.gates, net.n)
        if g is None:
            raise InputError(f"{args.family} has no natural gate set; pass --gates")
        net = schedule_gates(net, g, args.policy, _seed(args))
    _emit(network_to_json(net), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    net = load_network(args.network)
    report = coverage(net, parse_gateset(args.gates, net.n))
    _emit(report.to_json())
    return EXIT_OK if report.complete else EXIT_FAIL


def _tau(pairs: list[str] | None) -> dict | None:
    if not pairs:
        return None
    tau = {}
    for item in pairs:
        key, _, val = item.partition("=")
        try:
            tau[int(key)] = float(val)
        except ValueError as exc:
            raise InputError(f"--tau expects k=value, got {item!r}") from exc
    return tau


def cmd_stats(args) -> int:
    net = load_network(args.network)
    summary = cost(net, CostModel(_tau(args.tau)), args.merge)
    _emit(summary.as_dict())
    return EXIT_OK


def _host(spec: str | None, n: int) -> bounds.SimpleGraph:
    if spec is None:
        return bounds.path_graph(n)
    name, _, arg = spec.partition(":")
    if name == "path":
        return bounds.path_graph(int(arg))
    return bounds.parse_graph(_read_text(spec))


def cmd_bound(args) -> int:
    g = bounds.parse_graph(_read_text(args.graph))
    if args.method == "exact-ac":
        host = _host(args.host, g.n)
        result = bounds.acquaintance_time_exact(g, host, args.cap)
        _emit({"method": "exact-ac", "host": host.to_json(), **result.to_json()})
        return EXIT_OK if result.rounds is not None else EXIT_FAIL
    if args.method == "pathwidth":
        _emit({"method": "pathwidth", **bounds.pathwidth_exact(g).to_json()})
        return EXIT_OK
    pw = bounds.pathwidth_exact(g)
    _emit({"method": "pw-lb", "pathwidth": pw.width,
           "lower_bound": bounds.ac_lower_bound_from_pathwidth(g, pw.width),
           "decomposition": pw.decomposition.to_json()})
    return EXIT_OK


def castellated(n: int) -> list[tuple[int, int]]:
    """``(row, column)`` of each site on a 2 x n/2 grid, snaking so that
    consecutive sites are grid neighbours."""
    if n % 2:
        raise InputError(f"castellated layout needs even n, got {n}")
    out = []
    for s in range(n):
        col = s // 2
        row = s % 2 if col % 2 == 0 else 1 - s % 2
        out.append((row, col))
    return out


def diagram(net: SwapNetwork, opportunities: bool = False) -> str:
    """One text row per site, one column per shown layer.

    ``x`` marks a standard swap, ``<``/``>`` the left/right block of a
    generalized swap, ``#`` a scheduled gate and ``o`` an unscheduled
    opportunity (only with ``opportunities``).
    """
    columns = []
    for layer in net.layers:
        col = ["-"] * net.n
        shown = False
        for op in layer.ops:
            if isinstance(op, AcquaintOp):
                if op.tag is None and not opportunities:
                    continue
                mark = "o" if op.tag is None else "#"
                for s in range(op.position, op.position + op.width):
                    col[s] = mark
            elif op.is_standard:
                col[op.position] = col[op.position + 1] = "x"
            else:
                for s in range(op.position, op.position + op.left_size):
                    col[s] = "<"
                for s in range(op.position + op.left_size, op.position + op.width):
                    col[s] = ">"
            shown = True
        if shown:
            columns.append(col)
    width = len(str(net.n - 1))
    rows = []
    for s in range(net.n):
        label = f"{s:>{width}} [{net.initial[s]:>{width}}] "
        rows.append(label + "-" + "-".join(c[s] for c in columns) + "-")
    return "\n".join(rows)


def qasm_like(net: SwapNetwork) -> str:
    lines = [f"// swap network, {net.n} sites, {net.swap_kind} swaps",
             f"// initial mapping: {list(net.initial)}", f"qreg q[{net.n}];"]
    for t, layer in enumerate(decompose(net).layers):
        for op in layer.ops:
            if isinstance(op, AcquaintOp):
                if op.tag is not None:
                    sites = ",".join(f"q[{s}]" for s in range(op.position, op.position + op.width))
                    lines.append(f"// layer {t}: gate {list(op.tag)} on {sites}")
            else:
                lines.append(f"swap q[{op.position}],q[{op.position + 1}];")
    return "\n".join(lines)


def cmd_export(args) -> int:
    net = load_network(args.network)
    if args.format == "json":
        _emit(network_to_json(net))
    elif args.format == "diagram":
        sys.stdout.write(diagram(net, args.opportunities) + "\n")
    elif args.format == "castellated":
        grid = castellated(net.n)
        _emit({"rows": 2, "columns": net.n // 2,
               "sites": [{"site": s, "row": r, "column": c, "logical": net.initial[s]}
                         for s, (r, c) in enumerate(grid)]})
    else:
        sys.stdout.write(qasm_like(net) + "\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapnet", description="Swap networks on a line of qubits.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a network and print it as JSON")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("--n", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--keep-lower", action="store_true")
    gen.add_argument("--parts")
    gen.add_argument("--left")
    gen.add_argument("--right")
    gen.add_argument("--eta", type=int)
    gen.add_argument("--spin", action="store_true", help="spin-adapted uccgsd")
    gen.add_argument("--spatial", type=int)
    gen.add_argument("--repeats", type=int, default=1)
    gen.add_argument("--target", help="permutation as comma-separated sites")
    gen.add_argument("--schedule", action="store_true", help="tag one opportunity per gate")
    gen.add_argument("--gates", help="gate set spec used with --schedule")
    gen.add_argument("--policy", choices=("first", "random"), default="first")
    gen.add_argument("--seed", type=int)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="coverage report of a gate set")
    ver.add_argument("network")
    ver.add_argument("--gates", required=True)
    ver.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="cost summary")
    st.add_argument("network")
    st.add_argument("--tau", action="append", metavar="K=VALUE")
    st.add_argument("--merge", action="store_true")
    st.set_defaults(func=cmd_stats)

    bd = sub.add_parser("bound", help="acquaintance-time bounds of a graph")
    bd.add_argument("graph")
    bd.add_argument("--method", choices=("exact-ac", "pathwidth", "pw-lb"), required=True)
    bd.add_argument("--host", help="path:N or a graph file (default: path on the graph's vertices)")
    bd.add_argument("--cap", type=int, default=10)
    bd.set_defaults(func=cmd_bound)

    ex = sub.add_parser("export", help="render a network")
    ex.add_argument("network")
    ex.add_argument("--format", choices=("json", "diagram", "castellated", "qasm-like"), default="json")
    ex.add_argument("--opportunities", action="store_true", help="show untagged opportunities in diagrams")
    ex.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"swapnet: refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, SwapNetError, ValueError) as exc:
        print(f"swapnet: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
