"""Graph traces: vertex weights reproduced by summing over path sources."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Degree, Skeleton, box, is_locally_convex
from .errors import NotLocallyConvex
from .linalg import nullspace, positive_solution
from .paths import paths_from_leq


@dataclass(frozen=True)
class GraphTrace:
    values: dict
    normalised: bool
    faithful: bool

    def __getitem__(self, v):
        return self.values[v]

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def as_json(self) -> dict:
        return {
            "values": {v: str(x) for v, x in sorted(self.values.items())},
            "normalised": self.normalised,
            "faithful": self.faithful,
        }


@dataclass(frozen=True)
class TraceEquation:
    """g(vertex) = sum of g over `sources` (with multiplicity), for one colour."""
    vertex: str
    colour: int
    sources: tuple[str, ...]

    def holds(self, g) -> bool:
        return g[self.vertex] == sum((g[s] for s in self.sources), Fraction(0))


def trace_equations(sk: Skeleton, vertices=None) -> list[TraceEquation]:
    """One equation per vertex and colour it receives; colours it does not receive give none."""
    out = []
    for v in (sk.vertices if vertices is None else sorted(vertices)):
        for i in range(1, sk.rank + 1):
            incoming = sk.in_edges(v, i)
            if incoming:
                out.append(TraceEquation(v, i, tuple(sorted(e.source for e in incoming))))
    return out


def _matrix(sk: Skeleton, equations) -> list[list[int]]:
    index = {v: t for t, v in enumerate(sk.vertices)}
    rows = []
    for eq in equations:
        row = [0] * len(sk.vertices)
        row[index[eq.vertex]] += 1
        for s in eq.sources:
            row[index[s]] -= 1
        rows.append(row)
    return rows


def _require_convex(sk: Skeleton):
    if not is_locally_convex(sk):
        raise NotLocallyConvex("graph traces are solved on locally convex graphs")


def graph_trace_space(sk: Skeleton) -> list[dict]:
    """Rational basis of all solutions of the single-colour trace equations."""
    _require_convex(sk)
    basis = nullspace(_matrix(sk, trace_equations(sk)), cols=len(sk.vertices))
    return [dict(zip(sk.vertices, vec)) for vec in basis]


def normalized_faithful_trace(sk: Skeleton) -> GraphTrace | None:
    """A strictly positive trace of total mass 1, when one exists."""
    _require_convex(sk)
    x = positive_solution(_matrix(sk, trace_equations(sk)), len(sk.vertices))
    if x is None:
        return None
    total = sum(x, Fraction(0))
    values = {v: xi / total for v, xi in zip(sk.vertices, x)}
    return GraphTrace(values, True, all(val > 0 for val in values.values()))


def is_graph_trace(sk: Skeleton, g, vertices=None) -> bool:
    return all(eq.holds(g) for eq in trace_equations(sk, vertices))


def composite_degree_failures(sk: Skeleton, g, bound: Degree) -> list[tuple[str, Degree]]:
    """(v, n) with n <= bound where g(v) differs from the sum of g(s(lam)) over v Lambda^{<=n}."""
    bad = []
    for v in sk.vertices:
        for n in box(bound):
            total = sum((g[lam.source] for lam in paths_from_leq(sk, v, n)), Fraction(0))
            if total != g[v]:
                bad.append((v, n))
    return bad
