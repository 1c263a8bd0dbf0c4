"""Command-line surface.

Subcommands: ``represent`` (family targets), ``flow`` (orientations and
flows), ``gen`` (seeded instance generators), ``accept`` (the acceptance
suite).  Exit codes: 0 solved, 2 certified infeasible, 3 input error,
4 unsupported instance shape.  Every solving command re-verifies the printed
solution and emits a machine-parsable ``VERIFY ok`` / ``VERIFY fail <vertex>``
line before exiting.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import acceptance, basis_builder, generators, io
from .errors import (
    FormatError,
    Infeasible,
    UnsupportedSupportSize,
    ZpflowError,
)
from .field import Modulus
from .flows import (
    Boundary,
    EdgeWeighting,
    boundary_of_flow,
    construct_asf,
    is_antisymmetric_flow,
    solve_beta_orientation,
    solve_list_flow,
    solve_01_flow,
    solve_weighted_orientation,
    verify_orientation,
)
from .zpn_linear import SpaceKind

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_INPUT = 3
EXIT_UNSUPPORTED = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage, which collides with the
    'certified infeasible' code; route usage errors to the input-error code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _read(path: str) -> str:
    return Path(path).read_text()


def _cmd_represent(args) -> int:
    fam = io.parse_family(_read(args.family))
    target = io.parse_target(args.target, fam.dim, fam.modulus)
    prefer = basis_builder.Route.ORACLE if args.oracle else None
    kwargs = dict(prefer=prefer, allow_fallback=not args.force_constructive)
    if fam.space_kind is SpaceKind.ZERO_SUM:
        res = basis_builder.represent_zero_sum(fam, target, **kwargs)
    else:
        res = basis_builder.represent(fam, target, **kwargs)
    if isinstance(res, Infeasible):
        print(f"INFEASIBLE {res.reason}")
        return EXIT_INFEASIBLE
    for s, c in res.subset:
        print(f"pair {s} {c}")
    for step in res.trace:
        print(f"trace {step.route.value} dim={step.dim}")
    print("VERIFY ok" if basis_builder.replay(fam, target, res) else "VERIFY fail -")
    return EXIT_OK


def _print_orientation(oriented) -> None:
    for aid, t, h in oriented.arcs:
        print(f"arc {aid} {t} {h}")


def _print_flow(flow) -> None:
    for aid, value in flow.values:
        print(f"arc {aid} {value}")


def _cmd_flow(args) -> int:
    d, mod = io.parse_digraph(_read(args.digraph))
    modes = sum(bool(x) for x in (args.weights, args.lists, args.zero_one, args.asf))
    if modes > 1:
        print("error: choose at most one of --weights/--lists/--zero-one/--asf",
              file=sys.stderr)
        return EXIT_INPUT

    if args.asf:
        flow = construct_asf(d, args.asf)
        if isinstance(flow, Infeasible):
            print(f"INFEASIBLE {flow.reason}")
            return EXIT_INFEASIBLE
        _print_flow(flow)
        zero = Boundary.of({v: 0 for v in d.vertices}, flow.modulus)
        ok = is_antisymmetric_flow(d, flow) and boundary_of_flow(d, flow) == zero
        print("VERIFY ok" if ok else "VERIFY fail -")
        return EXIT_OK if ok else 1

    if args.boundary is None:
        print("error: this mode needs a boundary file", file=sys.stderr)
        return EXIT_INPUT
    beta = io.parse_boundary(_read(args.boundary), mod)

    if args.lists:
        lists = io.parse_lists(_read(args.lists), mod)
        flow = solve_list_flow(d, lists, beta)
        if isinstance(flow, Infeasible):
            print(f"INFEASIBLE {flow.reason}")
            return EXIT_INFEASIBLE
        _print_flow(flow)
        bad = _flow_mismatch(d, flow, beta)
        print("VERIFY ok" if bad is None else f"VERIFY fail {bad}")
        return EXIT_OK if bad is None else 1

    if args.zero_one:
        flow = solve_01_flow(d, beta)
        if isinstance(flow, Infeasible):
            print(f"INFEASIBLE {flow.reason}")
            return EXIT_INFEASIBLE
        _print_flow(flow)
        bad = _flow_mismatch(d, flow, beta)
        print("VERIFY ok" if bad is None else f"VERIFY fail {bad}")
        return EXIT_OK if bad is None else 1

    g = d.underlying()
    if args.weights:
        w = io.parse_weights(_read(args.weights), mod)
        oriented = solve_weighted_orientation(g, w, beta)
    else:
        w = EdgeWeighting.constant((eid for eid, _, _ in g.edges), 1, mod)
        oriented = solve_beta_orientation(g, beta)
    if isinstance(oriented, Infeasible):
        print(f"INFEASIBLE {oriented.reason}")
        return EXIT_INFEASIBLE
    _print_orientation(oriented)
    bad = verify_orientation(g, w, beta, oriented)
    print("VERIFY ok" if bad is None else f"VERIFY fail {bad}")
    return EXIT_OK if bad is None else 1


def _flow_mismatch(d, flow, beta) -> Optional[int]:
    got = boundary_of_flow(d, flow).as_dict()
    want = beta.as_dict()
    for v in sorted(d.vertices):
        if got.get(v, 0) != want.get(v, 0):
            return v
    return None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    if args.kind == "family":
        if args.space == "zero-sum":
            fam = generators.gen_zero_sum_family(args.p, args.n, args.t, args.seed)
        else:
            fam = generators.gen_family(
                args.p, args.n, args.t, args.ell, args.seed, style=args.style
            )
        _emit(io.serialize_family(fam), args.out)
        return EXIT_OK
    if args.kind == "graph":
        g = generators.gen_multigraph(args.n, args.conn, args.seed)
        _emit(io.serialize_graph(g, Modulus(args.p)), args.out)
        return EXIT_OK
    if args.kind == "digraph":
        d = generators.gen_digraph(args.n, args.m, args.seed)
        _emit(io.serialize_digraph(d, Modulus(args.p)), args.out)
        if args.boundary_out:
            beta = generators.gen_boundary(d, args.p, args.seed + 1)
            Path(args.boundary_out).write_text(io.serialize_boundary(beta))
        return EXIT_OK
    print(f"error: unknown generator kind {args.kind}", file=sys.stderr)
    return EXIT_INPUT


def _cmd_accept(args) -> int:
    numbers = None
    if args.only:
        numbers = [int(x) for x in args.only.split(",") if x.strip()]
    results = acceptance.run_all(jobs=args.jobs, numbers=numbers)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} criterion {r.number}: {r.description} [{r.detail}]")
        if not r.ok:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return EXIT_OK if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="zpflow", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("represent", parents=[], help="represent a target "
                         "as a subset of a basis family", add_help=True)
    rep.add_argument("family", help="family JSON file")
    rep.add_argument("--target", required=True,
                     help="dense comma-separated target, e.g. 1,2,0")
    rep.add_argument("--oracle", action="store_true",
                     help="answer with the exact oracle, skipping the "
                          "structured routes")
    rep.add_argument("--force-constructive", action="store_true",
                     help="report infeasible instead of falling back to the "
                          "oracle when no structured route applies")
    rep.add_argument("--seed", type=int, default=0,
                     help="reserved; the solver is deterministic")
    rep.set_defaults(fn=_cmd_represent)

    flw = sub.add_parser("flow", help="orientations and flows with a "
                         "prescribed boundary")
    flw.add_argument("digraph", help="digraph file (text or JSON)")
    flw.add_argument("boundary", nargs="?", default=None,
                     help="boundary file (not used with --asf)")
    flw.add_argument("--weights", help="edge weighting file -> weighted "
                     "orientation")
    flw.add_argument("--lists", help="two-element list file -> list flow")
    flw.add_argument("--zero-one", action="store_true",
                     help="flow with values in {0,1}")
    flw.add_argument("--asf", type=int, default=0, metavar="K",
                     help="antisymmetric flow over Z_(2K+1)")
    flw.set_defaults(fn=_cmd_flow)

    gen = sub.add_parser("gen", help="seeded instance generators")
    gen.add_argument("kind", choices=["family", "graph", "digraph"])
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--p", type=int, default=3, help="modulus")
    gen.add_argument("--n", type=int, required=True,
                     help="dimension / vertex count")
    gen.add_argument("--t", type=int, default=0, help="number of bases")
    gen.add_argument("--ell", type=int, default=1,
                     help="distinct size-2 shadows (family)")
    gen.add_argument("--style", choices=["tree", "unicyclic"], default="tree")
    gen.add_argument("--space", choices=["full", "zero-sum"], default="full")
    gen.add_argument("--conn", type=int, default=2,
                     help="minimum edge connectivity (graph)")
    gen.add_argument("--m", type=int, default=0, help="arc count (digraph)")
    gen.add_argument("--out", help="output file (default stdout)")
    gen.add_argument("--boundary-out",
                     help="also write a consistent boundary (digraph)")
    gen.set_defaults(fn=_cmd_gen)

    acc = sub.add_parser("accept", help="run the acceptance suite")
    acc.add_argument("--jobs", type=int, default=1,
                     help="run criteria in parallel processes")
    acc.add_argument("--only", help="comma-separated criterion numbers")
    acc.set_defaults(fn=_cmd_accept)
    return top


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UnsupportedSupportSize as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ZpflowError, FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
