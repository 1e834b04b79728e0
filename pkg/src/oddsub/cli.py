"""Command-line interface: ``oddsub <command> ...``.

Exit codes: 0 success or verification pass, 1 verification fail, 2 usage,
invalid input, resource limit or internal error.  Structured output goes to
stdout as JSON (DOT for export-dot); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

from .certify import IMMERSION, SUBDIVISION, Certificate, verify
from .config import CAPS
from .dot import export_dot
from .errors import OddSubError
from .graphs import (
    KneserOracle,
    MycielskiOracle,
    SchrijverOracle,
    complete_graph,
    cycle_graph,
    encode_vertex,
    graph_from_json,
    materialize,
    path_graph,
)
from .mycielski_lift import lift_immersion, lift_subdivision
from .subdivision_kneser import Theorem8Params, build_theorem2, build_theorem8
from .zigzag import build_theorem3, max_zigzags, zig_report

log = logging.getLogger("oddsub")


class UsageError(Exception):
    pass


def _read_text(path: str | None, what: str) -> str:
    try:
        return sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {what}: {exc}") from None


def _read_json(path: str | None, what: str):
    try:
        return json.loads(_read_text(path, what))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _load_graph(path: str):
    return graph_from_json(_read_json(path, "graph"))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    kind = args.family
    if kind in ("kneser", "schrijver"):
        if args.n is None or args.k is None:
            raise UsageError(f"generate {kind} needs --n and --k")
        host = (KneserOracle if kind == "kneser" else SchrijverOracle)(args.n, args.k)
    elif kind in ("complete", "cycle", "path"):
        if args.n is None:
            raise UsageError(f"generate {kind} needs --n")
        host = {"complete": complete_graph, "cycle": cycle_graph, "path": path_graph}[kind](args.n)
    else:
        if args.graph is None or args.m is None:
            raise UsageError("generate mycielski needs --graph and --m")
        host = MycielskiOracle(_load_graph(args.graph), args.m)
    if args.materialize:
        host = materialize(host)
    _emit(_dumps(host.to_json()), args.out)
    return 0


def cmd_construct(args) -> int:
    if args.which == "theorem8":
        cert = build_theorem8(Theorem8Params(args.k, args.r))
    elif args.which == "theorem2":
        cert = build_theorem2(args.k, args.r)
    else:
        if args.graph is None:
            raise UsageError("construct theorem3 needs --graph")
        cert = build_theorem3(materialize(_load_graph(args.graph)))
    log.info("built %s %s with %d paths", cert.pattern, cert.kind, len(cert.paths))
    _emit(cert.dumps() + "\n", args.out)
    return 0


def _constructor_args(sub, which):
    p = sub.add_parser(which, help=f"build the {which} certificate")
    if which == "theorem3":
        p.add_argument("--graph", help="graph JSON file")
    else:
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(which=which)
    return p


def cmd_certify(args) -> int:
    text = _read_text(args.cert, "certificate")
    try:
        cert = Certificate.from_json(json.loads(text))
    except (json.JSONDecodeError, OddSubError) as exc:
        report = {"verdict": "fail", "violations": [{"rule": "malformed", "witness": str(exc)}]}
        sys.stdout.write(_dumps(report))
        return 1
    kind = IMMERSION if args.immersion else SUBDIVISION if args.subdivision else cert.kind
    if kind not in (IMMERSION, SUBDIVISION):
        kind = SUBDIVISION
    report = verify(cert.as_kind(kind), require_odd=not args.no_odd)
    out = report.to_json()
    out.update({"kind": kind, "pattern": cert.pattern, "require_odd": not args.no_odd})
    sys.stdout.write(_dumps(out))
    log.info("%s %s: %s", cert.pattern, kind, report.verdict)
    return 0 if report.passed else 1


def cmd_zigzag(args) -> int:
    g = materialize(_load_graph(args.graph))
    rep = zig_report(g)

    def colouring(c):
        return [[encode_vertex(v), c[v]] for v in g.vertices]

    out = {
        "zig": rep.zig,
        "chi": rep.chi,
        "zig_colouring": colouring(rep.witness),
        "chi_colouring": colouring(rep.chi_colouring),
        "max_zigzags": [[encode_vertex(v) for v in z] for z in max_zigzags(g, rep.witness)],
    }
    sys.stdout.write(_dumps(out))
    return 0


def cmd_lift(args) -> int:
    obj = _read_json(args.cert, "certificate")
    host = _load_graph(args.graph) if args.graph else None
    cert = Certificate.from_json(obj, host)
    lifted = (lift_subdivision if args.subdivision else lift_immersion)(cert, args.m)
    _emit(lifted.dumps() + "\n", args.out)
    return 0


def cmd_export_dot(args) -> int:
    if (args.cert is None) == (args.graph is None):
        raise UsageError("export-dot needs exactly one of --cert or --graph")
    if args.cert is not None:
        target = Certificate.from_json(_read_json(args.cert, "certificate"))
    else:
        target = _load_graph(args.graph)
    _emit(export_dot(target), args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddsub", description="Totally odd subdivisions and immersions: "
                                     "constructions and certificate checking.")
    parser.add_argument("--cap-vertices", type=int, help="vertex cap for exhaustive colouring/zigzag search")
    parser.add_argument("--cap-colourings", type=int, help="cap on enumerated proper colourings")
    parser.add_argument("--cap-materialize", type=int, help="vertex cap when materializing an oracle host")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a host graph as JSON")
    p.add_argument("family", choices=["kneser", "schrijver", "complete", "cycle", "path", "mycielski"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--graph", help="base graph JSON (mycielski)")
    p.add_argument("--materialize", action="store_true", help="emit explicit vertices and edges")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("construct", help="build a certificate")
    csub = p.add_subparsers(dest="which", required=True)
    for which in ("theorem8", "theorem2", "theorem3"):
        _constructor_args(csub, which).set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="verify a certificate (stdin if --cert is omitted)")
    p.add_argument("--cert", help="certificate JSON file, or - for stdin")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--immersion", action="store_true", help="check as an immersion")
    g.add_argument("--subdivision", action="store_true", help="check as a subdivision")
    p.add_argument("--no-odd", action="store_true", help="do not require odd path lengths")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("zigzag", help="zig(G), chi(G) and witnessing colourings")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("lift", help="lift a certificate into the generalized Mycielskian")
    p.add_argument("--graph", help="base graph JSON (defaults to the certificate's host)")
    p.add_argument("--cert", help="base certificate JSON, or - for stdin")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--subdivision", action="store_true", help="lift as a subdivision")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("export-dot", help="render a graph or certificate as DOT")
    p.add_argument("--cert")
    p.add_argument("--graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="oddsub: %(message)s", stream=sys.stderr)
    saved = dataclasses.asdict(CAPS)
    for flag, field_name in (("cap_vertices", "vertices"), ("cap_colourings", "colourings"),
                             ("cap_materialize", "materialize")):
        value = getattr(args, flag)
        if value is not None:
            setattr(CAPS, field_name, value)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"oddsub: error: {exc}", file=sys.stderr)
        return 2
    except OddSubError as exc:
        print(f"oddsub: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        for name, value in saved.items():
            setattr(CAPS, name, value)


if __name__ == "__main__":
    sys.exit(main())
