"""Command-line front end: `kga <command> FILE ...`.

Exit codes: 0 success, 1 unreadable or malformed input, 2 the skeleton is
rejected by the validator, 3 a search limit was exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import kgformat
from .classify import (Certificate, classify_af, finite_dim_decomposition, gen_certificate, structure_report,
                       total_dimension)
from .constructions import (Functor, build_example42, build_omega, build_product, build_pullback,
                            skew_window_details)
from .core import parse_degree, validate
from .cycles import find_generalised_cycles, has_conventional_cycle
from .errors import KGraphError, LimitExceeded, ParseError, SkeletonRejected
from .fixtures import CATALOGUE, fixture
from .ideals import quotient_gencycle_sweep
from .ktheory import kgroups, vertex_class_criterion
from .traces import graph_trace_space, normalized_faithful_trace

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3


def _bound(args, sk):
    if args.max_degree is None:
        return tuple([1] * sk.rank)
    return parse_degree(args.max_degree, sk.rank)


def _emit(args, doc: dict, lines: list[str]):
    if getattr(args, "json", False):
        print(kgformat.to_json(doc))
    else:
        print("\n".join(lines))


def _load_accepted(path):
    sk = kgformat.load(path)
    sk.require_accepted()
    return sk


def cmd_validate(args) -> int:
    sk = kgformat.load(args.file)
    rep = validate(sk)
    doc = kgformat.report(sk, {"validation": rep.as_dict()}, "accepted" if rep.accepted else "rejected")
    lines = [f"rank {sk.rank}: {len(sk.vertices)} vertices, {len(sk.edges)} edges, {len(sk.squares)} squares",
             f"accepted: {rep.accepted}", f"locally convex: {rep.locally_convex}"]
    _emit(args, doc, lines)
    for issue in rep.issues:
        print(issue.describe(), file=sys.stderr)
    return EXIT_OK if rep.accepted else EXIT_INVALID


def cmd_analyze(args) -> int:
    sk = _load_accepted(args.file)
    bound = _bound(args, sk)
    cyclic, cert = has_conventional_cycle(sk)
    gens = find_generalised_cycles(sk, bound)
    checks = {
        "conventional_cycle": cert.as_json() if cyclic else None,
        "generalised_cycles": [g.as_json() for g in gens],
        "complete_up_to": list(bound),
    }
    lines = [f"cycle: {cert}" if cyclic else "cycle: none"]
    for g in gens:
        extra = f" entrance {g.entrance}" if g.has_entrance else " no entrance"
        lines.append(f"generalised cycle ({g.mu}, {g.nu}){extra}")
    lines.append(f"(complete up to degree {bound})")
    certs = [Certificate("cycle", (cert,))] if cyclic else []
    certs.extend(gen_certificate(g) for g in gens)
    doc = kgformat.report(sk, checks, None, [c.as_json() for c in certs], {"max_degree": list(bound)})
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    sk = _load_accepted(args.file)
    bound = _bound(args, sk)
    verdict = classify_af(sk, bound)
    checks = {}
    lines = [f"status: {verdict.status}"]
    if verdict.status == "AF":
        dec = finite_dim_decomposition(sk)
        checks["decomposition"] = [{"vertex": v, "dim": d} for v, d in dec]
        checks["total_dimension"] = total_dimension(dec)
        lines.append("decomposition: " + " + ".join(f"M_{d}" for _, d in dec))
    for c in verdict.reasons:
        words = ", ".join(str(p) for p in c.paths)
        lines.append(f"certificate {c.kind}" + (f": {words}" if words else "") + (f" entrance {c.entrance}" if c.entrance else "")
                     + (f" H={{{', '.join(c.hereditary)}}}" if c.hereditary else ""))
    doc = kgformat.report(sk, checks, verdict.status, [c.as_json() for c in verdict.reasons],
                          {"max_degree": list(bound)})
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_structure(args) -> int:
    sk = _load_accepted(args.file)
    rep = structure_report(sk)
    lines = [f"{rep.kind}: {rep.statement}"]
    for ic in rep.initial_cycles:
        lines.append(f"initial cycle {ic.mu} on {sorted(ic.vertex_orbit)}: rank {ic.torus_rank}")
    if rep.entrance:
        lines.append(f"cycle {rep.entrance[0]} has entrance {rep.entrance[1]}")
    doc = kgformat.report(sk, rep.as_json(), rep.kind, [], {"cycle_search": list(rep.bound)})
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_trace(args) -> int:
    sk = _load_accepted(args.file)
    basis = graph_trace_space(sk)
    tr = normalized_faithful_trace(sk)
    checks = {"solution_dimension": len(basis), "trace": tr.as_json() if tr else None}
    lines = [f"solution space dimension: {len(basis)}"]
    if tr:
        lines.extend(f"g({v}) = {x}" for v, x in sorted(tr.values.items()))
    else:
        lines.append("no normalised faithful graph trace")
    doc = kgformat.report(sk, checks, "faithful-trace" if tr else "no-faithful-trace")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_ktheory(args) -> int:
    sk = _load_accepted(args.file)
    kg = kgroups(sk)
    checks = kg.as_json()
    lines = [f"K0 = {kg.k0}", f"K1 = {kg.k1}"]
    if sk.rank == 2:
        crit = vertex_class_criterion(sk)
        checks["vertex_class_criterion"] = crit
        lines.append(f"vertex classes generate K0 (coordinate criterion): {crit}")
    doc = kgformat.report(sk, checks)
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_sweep(args) -> int:
    sk = _load_accepted(args.file)
    bound = _bound(args, sk)
    hits = quotient_gencycle_sweep(sk, bound)
    lines = [f"H = {{{', '.join(sorted(h.H.members))}}}: ({h.cycle.mu}, {h.cycle.nu})" for h in hits]
    lines.append(f"{len(hits)} hit(s), complete up to degree {bound}")
    verdict = "NotAF" if hits else None
    doc = kgformat.report(sk, {"hits": [h.as_json() for h in hits]}, verdict,
                          [gen_certificate(h.cycle, h.H.members).as_json() for h in hits],
                          {"max_degree": list(bound)})
    _emit(args, doc, lines)
    return EXIT_OK


def _parse_matrix(text: str) -> list[list[int]]:
    return [[int(x) for x in row.split(",")] for row in text.split(";")]


def _parse_assignment(text: str, k: int) -> dict:
    out = {}
    for item in text.split(";"):
        name, _, value = item.partition("=")
        out[name.strip()] = tuple(int(x) for x in value.split(","))
        if len(out[name.strip()]) != k:
            raise ValueError(f"value for {name} needs {k} coordinates")
    return out


def cmd_build(args) -> int:
    kind = args.kind
    comment = None
    if kind == "fixture":
        if not args.params:
            raise ValueError("build fixture needs a NAME (known: " + ", ".join(sorted(CATALOGUE)) + ")")
        sk = fixture(args.params[0])
        comment = f"fixture {args.params[0]}"
    elif kind == "omega":
        m = parse_degree(args.shape)
        sk = build_omega(len(m), m)
        comment = f"omega {args.shape}"
    elif kind == "pullback":
        sk = build_pullback(_load_accepted(args.params[0]), _parse_matrix(args.matrix))
    elif kind == "product":
        sk = build_product(_load_accepted(args.params[0]), _load_accepted(args.params[1]))
    elif kind == "skew":
        base = _load_accepted(args.params[0])
        lo, hi = parse_degree(args.lo, signed=True), parse_degree(args.hi, signed=True)
        c = Functor(len(lo), _parse_assignment(args.functor, len(lo)))
        win = skew_window_details(base, c, lo, hi)
        sk = win.skeleton
        comment = f"skew window; {win.deleted_edges} edges and {win.deleted_squares} squares removed at the boundary"
    elif kind == "example42":
        base = _load_accepted(args.params[0])
        c0 = {}
        for item in args.c0.split(";"):
            name, _, value = item.partition("=")
            c0[name.strip()] = int(value)
        sk = build_example42(base, c0, args.k).skeleton
    else:
        raise ValueError(f"unknown construction {kind}")
    sk.require_accepted()
    text = kgformat.dumps(sk, comment)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    sk = kgformat.load(args.file)
    text = kgformat.to_dot(sk)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kga", description="Analyse finite higher-rank graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, func, help_text, bound=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        if bound:
            p.add_argument("--max-degree", help="search bound, e.g. 2,2 (default all ones)")
        p.set_defaults(func=func)
        return p

    with_file("validate", cmd_validate, "check squares and the cube condition")
    with_file("analyze", cmd_analyze, "cycles, generalised cycles and entrances", bound=True)
    with_file("classify", cmd_classify, "AF verdict with certificates", bound=True)
    with_file("structure", cmd_structure, "finite-dimensional, purely infinite or torus structure")
    with_file("trace", cmd_trace, "graph traces")
    with_file("ktheory", cmd_ktheory, "K-groups for rank 1 and 2")
    with_file("sweep", cmd_sweep, "generalised cycles in quotients by saturated hereditary sets", bound=True)

    b = sub.add_parser("build", help="write a constructed graph in .kg format")
    b.add_argument("kind", choices=["omega", "pullback", "skew", "product", "example42", "fixture"])
    b.add_argument("params", nargs="*", help="fixture name or input .kg files")
    b.add_argument("--shape", help="omega: the degree m, e.g. 2,1")
    b.add_argument("--matrix", help="pullback: rows of f separated by ';', e.g. 1,1")
    b.add_argument("--functor", help="skew: edge values, e.g. 'a=0,1;b=1,1'")
    b.add_argument("--lo", help="skew: lower window corner")
    b.add_argument("--hi", help="skew: upper window corner")
    b.add_argument("--c0", help="example42: colour index per edge, e.g. 'a=1;b=0'")
    b.add_argument("--k", type=int, default=2, help="example42: target rank")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("export-dot", help="Graphviz rendering of the skeleton")
    d.add_argument("file")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_export_dot)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SkeletonRejected as exc:
        for issue in exc.issues:
            print(issue.describe(), file=sys.stderr)
        return EXIT_INVALID
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except KGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
