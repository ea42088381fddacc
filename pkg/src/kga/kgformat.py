"""The line-oriented .kg text format, DOT export and JSON report helpers.

    # comment
    rank 2
    vertex v
    edge e_1 1 v v          # name colour source range
    square e_1 f_1 = f_1 e_1

`square a b = c d` records the factorisation a.b = c.d, where a and d have
one colour and b and c the other.
"""

from __future__ import annotations

import json
import re

from .core import Edge, Skeleton, Square, validate
from .errors import MalformedSkeleton, ParseError

TOKEN = re.compile(r"[A-Za-z0-9_^,()\-]+\Z")
FORMAT_VERSION = "kga-report/1"


def _check_token(tok: str, lineno: int):
    if not TOKEN.match(tok):
        raise ParseError(lineno, f"bad token {tok!r}")


def loads(text: str) -> Skeleton:
    rank = None
    vertices: list[str] = []
    edges: list[Edge] = []
    squares: list[Square] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        if rank is None:
            if head != "rank" or len(args) != 1 or not args[0].isdigit():
                raise ParseError(lineno, "the first line must be 'rank <k>'")
            rank = int(args[0])
            continue
        if head == "rank":
            raise ParseError(lineno, "rank given twice")
        for tok in args:
            if tok != "=":
                _check_token(tok, lineno)
        if head == "vertex":
            if len(args) != 1:
                raise ParseError(lineno, "expected 'vertex <name>'")
            if args[0] in names:
                raise ParseError(lineno, f"duplicate name {args[0]}")
            names.add(args[0])
            vertices.append(args[0])
        elif head == "edge":
            if len(args) != 4 or not args[1].isdigit():
                raise ParseError(lineno, "expected 'edge <name> <colour> <source> <range>'")
            if args[0] in names:
                raise ParseError(lineno, f"duplicate name {args[0]}")
            names.add(args[0])
            edges.append(Edge(args[0], int(args[1]), args[2], args[3]))
        elif head == "square":
            if len(args) != 5 or args[2] != "=":
                raise ParseError(lineno, "expected 'square <a> <b> = <c> <d>'")
            squares.append(Square((args[0], args[1]), (args[3], args[4])))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if rank is None:
        raise ParseError(0, "empty input: no 'rank' line")
    try:
        return Skeleton(rank, tuple(vertices), tuple(edges), tuple(squares))
    except MalformedSkeleton as exc:
        raise ParseError(0, str(exc)) from None


def load(path) -> Skeleton:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(sk: Skeleton, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"rank {sk.rank}")
    lines.extend(f"vertex {v}" for v in sk.vertices)
    lines.extend(f"edge {e.name} {e.colour} {e.source} {e.range}" for e in sk.edges)
    lines.extend(f"square {s.first[0]} {s.first[1]} = {s.second[0]} {s.second[1]}" for s in sk.squares)
    return "\n".join(lines) + "\n"


def dump(sk: Skeleton, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(sk, comment))


PALETTE = ["blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "gray"]


def to_dot(sk: Skeleton, name: str = "kgraph") -> str:
    """Edges drawn source -> range, coloured by colour index; squares listed in a comment."""
    out = [f"digraph {json.dumps(name)} {{"]
    for v in sk.vertices:
        out.append(f"  {json.dumps(v)};")
    for e in sk.edges:
        colour = PALETTE[(e.colour - 1) % len(PALETTE)]
        out.append(f"  {json.dumps(e.source)} -> {json.dumps(e.range)} "
                   f"[label={json.dumps(e.name)}, color={colour}, colour_index={e.colour}];")
    if sk.squares:
        out.append("  /* squares:")
        for s in sk.squares:
            out.append(f"     {s.first[0]} {s.first[1]} = {s.second[0]} {s.second[1]}")
        out.append("  */")
    out.append("}")
    return "\n".join(out) + "\n"


def graph_section(sk: Skeleton) -> dict:
    report = validate(sk)
    out = dict(sk.summary())
    out.update({
        "accepted": report.accepted,
        "locally_convex": report.locally_convex,
        "row_finite": report.row_finite,
    })
    return out


def report(sk: Skeleton, checks: dict, verdict=None, certificates=(), bounds=None) -> dict:
    """The fixed JSON report layout."""
    return {
        "graph": graph_section(sk),
        "checks": checks,
        "verdict": verdict,
        "certificates": list(certificates),
        "bounds": bounds or {},
        "version": FORMAT_VERSION,
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
