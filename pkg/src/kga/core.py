"""Degree arithmetic and the skeleton data model.

A skeleton is a k-coloured directed multigraph together with a set of
commuting squares.  Edges point from source to range and a word
``e0 e1 ... en`` is composable when ``s(e_t) == r(e_{t+1})``, so the
range-most edge is written first.

A square ``a b = c d`` says the two-edge path ``a.b`` equals ``c.d``
where colour(a) == colour(d) != colour(b) == colour(c).  Squares are
stored with the lower colour on the left of the ``first`` pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    CubeViolation,
    DuplicateSquare,
    MalformedSkeleton,
    MissingSquare,
    SkeletonRejected,
    ValidationIssue,
)

Degree = tuple[int, ...]


# -- degree lattice -----------------------------------------------------------

def zero(k: int) -> Degree:
    return (0,) * k


def unit(k: int, colour: int) -> Degree:
    """The generator e_colour of N^k; colours are 1-based."""
    return tuple(1 if i == colour - 1 else 0 for i in range(k))


def add(m: Degree, n: Degree) -> Degree:
    return tuple(a + b for a, b in zip(m, n))


def sub(m: Degree, n: Degree) -> Degree:
    out = tuple(a - b for a, b in zip(m, n))
    if any(x < 0 for x in out):
        raise ValueError(f"{n} is not below {m}")
    return out


def join(m: Degree, n: Degree) -> Degree:
    return tuple(max(a, b) for a, b in zip(m, n))


def meet(m: Degree, n: Degree) -> Degree:
    return tuple(min(a, b) for a, b in zip(m, n))


def leq(m: Degree, n: Degree) -> bool:
    return all(a <= b for a, b in zip(m, n))


def norm(n: Degree) -> int:
    return sum(n)


def is_zero(n: Degree) -> bool:
    return not any(n)


def scale(t: int, n: Degree) -> Degree:
    return tuple(t * a for a in n)


def box(n: Degree):
    """All m with 0 <= m <= n, in lexicographic order."""
    return itertools.product(*(range(a + 1) for a in n))


def colour_sequence(n: Degree) -> list[int]:
    """Sorted colour list of a degree: (2, 1) -> [1, 1, 2]."""
    out = []
    for i, a in enumerate(n):
        out.extend([i + 1] * a)
    return out


def parse_degree(text: str, k: int | None = None, *, signed: bool = False) -> Degree:
    """Parse '1,2' or '(1,2)'; a single integer is broadcast when k is given.
    With `signed`, negative coordinates are allowed (window corners in Z^k)."""
    body = text.strip().strip("()")
    parts = [p for p in body.split(",") if p.strip()]
    values = tuple(int(p) for p in parts)
    if k is not None and len(values) == 1 and k > 1:
        values = values * k
    if k is not None and len(values) != k:
        raise ValueError(f"degree {text!r} does not have {k} coordinates")
    if not signed and any(v < 0 for v in values):
        raise ValueError(f"degree {text!r} has a negative coordinate")
    return values


# -- data model ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Edge:
    name: str
    colour: int
    source: str
    range: str


@dataclass(frozen=True, order=True)
class Square:
    """first = (alpha, beta) with alpha.beta == beta'.alpha' = second."""

    first: tuple[str, str]
    second: tuple[str, str]

    @property
    def words(self):
        return (self.first, self.second)


@dataclass(frozen=True)
class Skeleton:
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    squares: tuple[Square, ...]
    cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.rank < 1:
            raise MalformedSkeleton(f"rank must be positive, got {self.rank}")
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise MalformedSkeleton("duplicate vertex name")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            dup = sorted(n for n in set(names) if names.count(n) > 1)
            raise MalformedSkeleton(f"duplicate edge name {dup[0]}")
        clash = set(names) & set(verts)
        if clash:
            raise MalformedSkeleton(f"name used for both a vertex and an edge: {sorted(clash)[0]}")
        vset = set(verts)
        for e in self.edges:
            if not 1 <= e.colour <= self.rank:
                raise MalformedSkeleton(f"edge {e.name} has colour {e.colour} outside 1..{self.rank}")
            if e.source not in vset or e.range not in vset:
                raise MalformedSkeleton(f"edge {e.name} has an unknown endpoint")
        by_name = {e.name: e for e in self.edges}
        squares = []
        for sq in self.squares:
            squares.append(_canonical_square(sq, by_name))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "squares", tuple(sorted(squares)))

    # indexes

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def _in_edges(self) -> dict[tuple[str, int], tuple[Edge, ...]]:
        table: dict[tuple[str, int], list[Edge]] = {}
        for e in self.edges:
            table.setdefault((e.range, e.colour), []).append(e)
        return {key: tuple(val) for key, val in table.items()}

    def in_edges(self, v: str, colour: int) -> tuple[Edge, ...]:
        """Colour-`colour` edges with range v, i.e. the set v.Lambda^{e_colour}."""
        return self._in_edges.get((v, colour), ())

    @cached_property
    def edges_at(self) -> dict[str, tuple[Edge, ...]]:
        """All edges with range v, sorted by name."""
        table: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            table[e.range].append(e)
        return {v: tuple(es) for v, es in table.items()}

    @cached_property
    def partner(self) -> dict[tuple[str, str], tuple[str, str]]:
        """Square partner of a bicoloured two-edge word, in both directions."""
        table = {}
        for sq in self.squares:
            table.setdefault(sq.first, sq.second)
            table.setdefault(sq.second, sq.first)
        return table

    def colour(self, name: str) -> int:
        return self.edge[name].colour

    def degree_of(self, names) -> Degree:
        d = [0] * self.rank
        for n in names:
            d[self.edge[n].colour - 1] += 1
        return tuple(d)

    def summary(self) -> dict:
        return {
            "rank": self.rank,
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "squares": len(self.squares),
        }

    def require_accepted(self) -> "Skeleton":
        report = validate(self)
        if not report.accepted:
            raise SkeletonRejected(report.issues)
        return self


def _canonical_square(sq: Square, by_name: dict[str, Edge]) -> Square:
    try:
        a, b = (by_name[n] for n in sq.first)
        c, d = (by_name[n] for n in sq.second)
    except KeyError as exc:
        raise MalformedSkeleton(f"square mentions unknown edge {exc.args[0]}") from None
    where = f"square {a.name} {b.name} = {c.name} {d.name}"
    if a.colour != d.colour or b.colour != c.colour or a.colour == b.colour:
        raise MalformedSkeleton(f"{where}: colours must pair as i j = j i with i != j")
    if a.source != b.range or c.source != d.range:
        raise MalformedSkeleton(f"{where}: a side is not composable")
    if a.range != c.range or b.source != d.source:
        raise MalformedSkeleton(f"{where}: the two sides have different endpoints")
    if a.colour < b.colour:
        return Square((a.name, b.name), (c.name, d.name))
    return Square((c.name, d.name), (a.name, b.name))


def make_skeleton(rank: int, vertices, edges, squares) -> Skeleton:
    """Convenience constructor from plain tuples.

    edges: iterable of (name, colour, source, range) or Edge;
    squares: iterable of (a, b, c, d) meaning a.b = c.d, or Square.
    """
    es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
    sqs = [s if isinstance(s, Square) else Square((s[0], s[1]), (s[2], s[3])) for s in squares]
    return Skeleton(rank, tuple(vertices), tuple(es), tuple(sqs))


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    bijective: bool
    cube: bool | None
    locally_convex: bool
    row_finite: bool
    sources: dict[int, tuple[str, ...]]
    issues: list[ValidationIssue]

    @property
    def accepted(self) -> bool:
        return self.bijective and self.cube is not False

    def raise_for_issues(self):
        if self.issues:
            raise self.issues[0]

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "square_bijectivity": self.bijective,
            "cube_condition": self.cube,
            "locally_convex": self.locally_convex,
            "row_finite": self.row_finite,
            "sources_per_colour": {str(i): list(vs) for i, vs in sorted(self.sources.items())},
            "issues": [issue.describe() for issue in self.issues],
        }


def composable_pairs(sk: Skeleton):
    """All composable two-edge words (x, y) with different colours."""
    for x in sk.edges:
        for y in sk.edges_at[x.source]:
            if y.colour != x.colour:
                yield (x.name, y.name)


def validate(sk: Skeleton) -> ValidationReport:
    cached = sk.cache.get("validation")
    if cached is not None:
        return cached
    issues: list[ValidationIssue] = []
    count: dict[tuple[str, str], int] = {}
    for sq in sk.squares:
        for word in sq.words:
            count[word] = count.get(word, 0) + 1
    for pair in composable_pairs(sk):
        n = count.get(pair, 0)
        if n == 0:
            issues.append(MissingSquare(pair, "no square contains this word"))
        elif n > 1:
            issues.append(DuplicateSquare(pair, f"word appears in {n} squares"))
    bijective = not issues

    cube = None
    if sk.rank >= 3:
        cube = True
        if bijective:
            for triple in _tricoloured_triples(sk):
                one = _swap_route(sk, triple, (0, 1, 0))
                two = _swap_route(sk, triple, (1, 0, 1))
                if one != two:
                    cube = False
                    issues.append(CubeViolation(triple, f"{' '.join(one)} vs {' '.join(two)}"))
        else:
            cube = False

    sources = {i: tuple(v for v in sk.vertices if not sk.in_edges(v, i)) for i in range(1, sk.rank + 1)}
    report = ValidationReport(
        bijective=bijective,
        cube=cube,
        locally_convex=is_locally_convex(sk),
        row_finite=True,
        sources=sources,
        issues=issues,
    )
    sk.cache["validation"] = report
    return report


def _tricoloured_triples(sk: Skeleton):
    for x in sk.edges:
        for y in sk.edges_at[x.source]:
            if y.colour == x.colour:
                continue
            for z in sk.edges_at[y.source]:
                if z.colour not in (x.colour, y.colour):
                    yield (x.name, y.name, z.name)


def _swap_route(sk: Skeleton, word, positions) -> tuple[str, ...]:
    w = list(word)
    for p in positions:
        w[p], w[p + 1] = sk.partner[(w[p], w[p + 1])]
    return tuple(w)


def is_locally_convex(sk: Skeleton) -> bool:
    """Whenever mu has degree e_i and r(mu) receives colour j != i, so does s(mu)."""
    for e in sk.edges:
        for j in range(1, sk.rank + 1):
            if j != e.colour and sk.in_edges(e.range, j) and not sk.in_edges(e.source, j):
                return False
    return True


def vertex_matrix(sk: Skeleton, colour: int) -> list[list[int]]:
    """M(v, w) = number of colour edges with range v and source w, rows in vertex order."""
    index = {v: t for t, v in enumerate(sk.vertices)}
    n = len(sk.vertices)
    m = [[0] * n for _ in range(n)]
    for e in sk.edges:
        if e.colour == colour:
            m[index[e.range]][index[e.source]] += 1
    return m


def subskeleton(sk: Skeleton, keep_vertices, keep_edges=None, rank: int | None = None) -> Skeleton:
    """Restrict to a vertex set (and optionally an edge-name set); squares kept when all edges survive."""
    vs = set(keep_vertices)
    edges = [e for e in sk.edges if e.source in vs and e.range in vs
             and (keep_edges is None or e.name in keep_edges)]
    names = {e.name for e in edges}
    squares = [sq for sq in sk.squares if set(sq.first) | set(sq.second) <= names]
    return Skeleton(rank or sk.rank, tuple(sorted(vs)), tuple(edges), tuple(squares))
