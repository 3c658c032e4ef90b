"""Command-line entry point.

Exit codes: 0 success or verdict true, 1 verdict false, 2 error, 3 undecided.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from .cog import find_homotopy, is_covering
from .deck import build_context, covering_from_subgroup, verify_main_theorem
from .development import build_development, check_simply_connected, star
from .errors import CogError, NotACovering, Undecided, UnknownCommand
from .fileformat import Workspace, parse_file, parse_path, serialize, token
from .groups import subgroup_generated
from .presentation import build_presentation, fundamental_group, is_developable

COMMANDS = ("validate", "pi1", "develop", "star", "cover-check", "cover-from-subgroup", "deck", "homotopy")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def format_report(report: dict, indent: str = "") -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(format_report(v, indent + "  "))
        else:
            lines.append(f"{indent}{k} {_fmt(v)}")
    return "\n".join(x for x in lines if x)


def _gen_name(gen) -> str:
    if gen[0] == "x":
        return f"x[{gen[1]}:{gen[2]}]"
    return f"t[{gen[1]}]"


def _cog(ws: Workspace, name):
    return ws.only("cog", name)


def _base(cog, base):
    if base is None:
        return cog.base.vertices[0]
    b = token(base)
    if b not in cog.base.vertices:
        raise CogError(f"unknown vertex {base!r}")
    return b


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    ws = parse_file(args.file)
    report = {
        "file": args.file,
        "groups": len(ws.groups),
        "scwols": len(ws.scwols),
        "cogs": len(ws.cogs),
        "scwol_morphisms": len(ws.scwol_morphisms),
        "cog_morphisms": len(ws.cog_morphisms),
        "valid": True,
    }
    return 0, report


def cmd_pi1(args):
    C = _cog(parse_file(args.file), args.cog)
    base = _base(C, args.base)
    counts = build_presentation(C, base).counts()
    report = {"cog": C.name, "base": base}
    try:
        pi = fundamental_group(C, base, args.limit)
    except Undecided:
        report["order"] = "Incomplete"
        report["limit"] = args.limit
        report.update(counts)
        return 3, report
    ok, bad = is_developable(pi)
    report["order"] = pi.order
    report.update(counts)
    report["developable"] = ok
    if args.emit_table:
        t = pi.table
        cols = []
        for g in t.generators:
            cols += [_gen_name(g), _gen_name(g) + "^-1"]
        with open(args.emit_table, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["coset"] + cols)
            for c, row in enumerate(t.rows):
                w.writerow([c] + list(row))
    return 0, report


def cmd_develop(args):
    C = _cog(parse_file(args.file), args.cog)
    base = _base(C, args.base)
    D = build_development(C, base, args.limit)
    sc = check_simply_connected(D, args.limit)
    report = {
        "cog": C.name,
        "base": base,
        "pi1_order": D.G.order,
        "vertices": sc["vertices"],
        "edges": sc["edges"],
        "composable_pairs": sc["composable_pairs"],
    }
    if "euler_characteristic" in sc:
        report["euler_characteristic"] = sc["euler_characteristic"]
    report["kernel_order"] = D.action_kernel().order
    report["simply_connected"] = sc["order"] == 1
    if args.emit_graph:
        with open(args.emit_graph, "w", encoding="utf-8") as fh:
            for n, (a, r) in enumerate(D.edges):
                i, t = D.scwol.edges[n]
                si, ri = D.vertices[i]
                st, rt = D.vertices[t]
                fh.write(f"{a} {si}:{ri} {st}:{rt}\n")
    return 0, report


def cmd_star(args):
    C = _cog(parse_file(args.file), args.cog)
    v = _base(C, args.vertex)
    rep = star(C, v)
    report = {
        "cog": C.name,
        "center": v,
        "incoming_edges": rep.size,
        "grouping": "+".join(str(len(reps)) for _, reps in rep.groups),
        "groups": {str(a): list(reps) for a, reps in rep.groups},
    }
    return 0, report


def cmd_cover_check(args):
    phi = parse_file(args.file).only("cogmorphism", args.morphism)
    report = {"morphism": phi.name, "source": phi.source.name, "target": phi.target.name}
    try:
        is_covering(phi)
    except NotACovering as exc:
        report["covering"] = False
        report["reason"] = f"{type(exc).__name__}: {exc}"
        return 1, report
    report["covering"] = True
    return 0, report


def cmd_cover_from_subgroup(args):
    C = _cog(parse_file(args.file), args.cog)
    base = _base(C, args.base)
    D = build_development(C, base, args.limit)
    gens = [D.pi1.element_of_path(parse_path(C, g)) for g in args.gen]
    U = subgroup_generated(D.G, gens)
    sc = covering_from_subgroup(C, base, U, args.limit, devY=D)
    report = {
        "cog": C.name,
        "base": base,
        "generators": gens,
        "subgroup_order": U.order,
        "index": D.G.order // U.order,
        "cover_vertices": len(sc.cog.base.vertices),
        "cover_edges": len(sc.cog.base.edges),
        "cover_base": sc.base,
        "conjugator": sc.conjugator,
    }
    if args.out:
        ws = Workspace()
        ws.include_cog(C)
        sc.cog.name = args.name
        ws.include_cog_morphism(sc.phi, "covering")
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize(ws))
        report["written"] = args.out
    return 0, report


def cmd_deck(args):
    phi = parse_file(args.file).only("cogmorphism", args.morphism)
    base = _base(phi.source, args.base)
    ctx = build_context(phi, base, args.limit)
    r = verify_main_theorem(ctx, args.bound)
    report = {"morphism": phi.name, "base": base}
    report.update(r.as_dict())
    report["checks"] = {
        "homomorphism": r.details["homomorphism"],
        "image_classes": r.details["image_classes"],
        "surjective": r.details["surjective"],
        "surjectivity_mode": r.details["surjectivity_mode"],
    }
    return (0 if r.deck["verdict"] else 1), report


def cmd_homotopy(args):
    ws = parse_file(args.file)
    phi = ws.only("cogmorphism", args.phi)
    eta = ws.only("cogmorphism", args.eta)
    rel = None if args.rel is None else _base(phi.source, args.rel)
    h = find_homotopy(phi, eta, rel)
    report = {"phi": phi.name, "eta": eta.name, "rel": rel, "homotopic": h is not None}
    if h is not None:
        report["family"] = {str(v): k for v, k in h.family.items()}
    return (0 if h is not None else 1), report


HANDLERS = {
    "validate": cmd_validate,
    "pi1": cmd_pi1,
    "develop": cmd_develop,
    "star": cmd_star,
    "cover-check": cmd_cover_check,
    "cover-from-subgroup": cmd_cover_from_subgroup,
    "deck": cmd_deck,
    "homotopy": cmd_homotopy,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cogdeck", description="Complexes of groups, developments, coverings and deck groups.")
    sub = p.add_subparsers(dest="command", metavar="command")

    def add(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--report", help="write the report as JSON")
        return s

    add("validate", "parse and validate every object in a file")
    s = add("pi1", "fundamental group by coset enumeration")
    s.add_argument("--cog")
    s.add_argument("--base")
    s.add_argument("--limit", type=int, default=100000)
    s.add_argument("--emit-table", help="write the coset table as CSV")
    s = add("develop", "universal development")
    s.add_argument("--cog")
    s.add_argument("--base")
    s.add_argument("--limit", type=int, default=100000)
    s.add_argument("--emit-graph", help="write the development edge list")
    s = add("star", "incoming edges at (v, U_v) without global development")
    s.add_argument("--cog")
    s.add_argument("--vertex", required=True)
    s = add("cover-check", "check the covering conditions")
    s.add_argument("--morphism")
    s = add("cover-from-subgroup", "covering induced by a subgroup of pi1")
    s.add_argument("--cog")
    s.add_argument("--base")
    s.add_argument("--gen", action="append", default=[], help="loop at the base as a path literal; repeatable")
    s.add_argument("--limit", type=int, default=100000)
    s.add_argument("--name", default="cover", help="name of the covering complex in --out")
    s.add_argument("--out")
    s = add("deck", "verify Deck = N/(C U) for a covering")
    s.add_argument("--morphism")
    s.add_argument("--base")
    s.add_argument("--limit", type=int, default=100000)
    s.add_argument("--bound", type=int, default=10**6)
    s = add("homotopy", "search for a homotopy between two morphisms")
    s.add_argument("--phi", required=True)
    s.add_argument("--eta", required=True)
    s.add_argument("--rel")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        print(f"error: UnknownCommand: {UnknownCommand(f'unknown command {argv[0]!r}')}", file=err)
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command is None:
        parser.print_help(err)
        return 2
    try:
        code, report = HANDLERS[args.command](args)
    except CogError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 3 if isinstance(exc, Undecided) else 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    report = {"command": args.command, "exit_code": code, **report}
    print(format_report(report), file=out)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return code


def main():
    sys.exit(run())
