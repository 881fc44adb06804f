"""Command line entry point ``plab``.

Exit status: 0 when every check passes, 1 when some check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import exactlin as el
from .algebra import Algebra, AveragingAlgebra, search_averaging_operators
from .errors import PlabError
from .representations import AvgRepresentation, Representation
from .rota_baxter import search_rb_operators, search_relative_rb
from .suite import PRESETS, Step, check_names, emit_report, parse_report, parse_suite, run_suite
from .workspace import LinearMap, Workspace, emit_workspace, load_workspace


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _steps(ws: Workspace, suite: str):
    if suite in PRESETS or suite == "all":
        return suite
    path = Path(suite)
    if path.is_file():
        return parse_suite(path.read_text(encoding="utf-8"))
    return parse_suite(suite.replace(";", "\n"))


def cmd_check(args) -> int:
    ws = load_workspace(args.file)
    rep = run_suite(ws, _steps(ws, args.suite))
    _write(emit_report(rep, args.format), args.out)
    return 0 if rep.passed else 1


def cmd_derive(args) -> int:
    ws = load_workspace(args.file)
    if " " in args.op.strip():
        steps = parse_suite(args.op)
    else:
        steps = [Step(args.op, tuple(args.args), args.as_name)]
    rep = run_suite(ws, steps)
    if not rep.passed:
        sys.stderr.write(emit_report(rep, "text").decode())
        return 1
    _write(emit_workspace(ws).encode(), args.out)
    return 0


def _first(ws: Workspace, source: str, role: str) -> str | None:
    return next((n for n, o in ws.objects.items()
                 if isinstance(o, LinearMap) and o.source == source and o.role == role), None)


def cmd_search(args) -> int:
    ws = load_workspace(args.file)
    entries = [el.q(Fraction(e)) for e in args.entries.split(",") if e.strip()]
    lines = []
    if args.target in ("averaging", "rb"):
        name = args.on or next((n for n, o in ws.objects.items() if isinstance(o, Algebra)), None)
        if name is None:
            raise PlabError("the workspace has no algebra to search on")
        alg = ws.get(name, Algebra)
        if args.target == "averaging":
            found = search_averaging_operators(alg, entries, args.budget)
            head = "map {} from " + name + " role averaging rows:"
        else:
            w = el.q(Fraction(args.weight))
            found = search_rb_operators(alg, w, entries, args.budget)
            head = "map {} from " + name + f" weight {el.fmt(w)} role rb rows:"
    else:
        if args.rep is None:
            raise PlabError("relative-rb search needs --rep")
        rep = ws.get(args.rep, Representation)
        alg_name = next(n for n, o in ws.objects.items() if o is rep.alg)
        p = args.p or _first(ws, alg_name, "averaging")
        alpha = args.alpha or _first(ws, args.rep, "averaging")
        if p is None or alpha is None:
            raise PlabError("relative-rb search needs averaging maps on the algebra and the module (--p, --alpha)")
        avg = AveragingAlgebra(rep.alg, ws.get(p, LinearMap).matrix)
        found = search_relative_rb(AvgRepresentation(rep, avg, ws.get(alpha, LinearMap).matrix), entries,
                                   args.budget)
        n, m = rep.alg.dim, rep.module_dim
        head = "map {} from " + args.rep + (f" dim {n}" if n != m else "") + " role relative-rb rows:"
    for k, mat in enumerate(found, start=1):
        lines.append(head.format(f"{args.prefix}{k}"))
        lines += ["  " + " ".join(el.fmt(v) for v in row) for row in mat]
    lines.append(f"# {len(found)} found")
    _write(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def cmd_report(args) -> int:
    data = Path(args.input).read_bytes() if args.input and args.input != "-" else sys.stdin.buffer.read()
    rep = parse_report(data)
    _write(emit_report(rep, args.format), args.out)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plab", description="Exact checks for averaging pre-Lie structures.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run a suite over a workspace file")
    c.add_argument("file")
    c.add_argument("--suite", default="all",
                   help=f"preset ({', '.join(list(PRESETS) + ['all'])}), a suite file, or steps separated by ';'")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_check)

    d = sub.add_parser("derive", help="run a construction and write the extended workspace")
    d.add_argument("file")
    d.add_argument("--op", required=True, help=f"one of {', '.join(check_names())}, or a full step")
    d.add_argument("--args", nargs="*", default=[])
    d.add_argument("--as", dest="as_name")
    d.add_argument("--out")
    d.set_defaults(fn=cmd_derive)

    s = sub.add_parser("search", help="enumerate operators with entries from a finite set")
    s.add_argument("file")
    s.add_argument("--target", choices=["averaging", "rb", "relative-rb"], required=True)
    s.add_argument("--entries", default="-1,0,1")
    s.add_argument("--budget", type=int, help="cap on candidates (default: PLAB_BUDGET or built-in)")
    s.add_argument("--on", help="algebra to search on (default: the first one)")
    s.add_argument("--weight", default="0")
    s.add_argument("--rep")
    s.add_argument("--p")
    s.add_argument("--alpha")
    s.add_argument("--prefix", default="found")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_search)

    r = sub.add_parser("report", help="render a saved JSON report")
    r.add_argument("input", nargs="?", default="-")
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.add_argument("--out")
    r.set_defaults(fn=cmd_report)
    return ap


def _glue_negative(argv: list[str]) -> list[str]:
    # let "--entries -1,0,1" through argparse, which would read "-1,0,1" as a flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--entries", "--weight") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative(argv))
    try:
        return args.fn(args)
    except (PlabError, OSError, ValueError) as e:
        sys.stderr.write(f"plab: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
