"""Builders: Omega graphs, pullbacks, skew-product windows, products.

Also the pullback-plus-functor construction over a 1-graph used for the
AF-but-exotic family, together with exhaustive checks of its degree
identities, and a few helpers (disjoint unions, edge subdivision and a
brute-force isomorphism search).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    Degree,
    Edge,
    Skeleton,
    Square,
    add,
    box,
    colour_sequence,
    leq,
    unit,
    validate,
    zero,
)
from .errors import EmptyWindow, MalformedSkeleton, NotExample42Graph, NotSurjective
from .paths import Path, compose, paths_from, segment


def fmt(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


# -- functors -----------------------------------------------------------------

@dataclass(frozen=True)
class Functor:
    """An assignment of Z^k values to edges, extended additively to paths."""

    rank: int
    edge_values: dict = field(hash=False)

    def value(self, p) -> tuple[int, ...]:
        words = p.word if isinstance(p, Path) else tuple(p)
        total = [0] * self.rank
        for name in words:
            for i, x in enumerate(self.edge_values[name]):
                total[i] += x
        return tuple(total)

    def square_defects(self, sk: Skeleton) -> list[Square]:
        """Squares whose two sides get different values."""
        return [sq for sq in sk.squares if self.value(sq.first) != self.value(sq.second)]

    def is_compatible(self, sk: Skeleton) -> bool:
        return set(self.edge_values) >= {e.name for e in sk.edges} and not self.square_defects(sk)


# -- Omega --------------------------------------------------------------------

def build_omega(k: int, m: Degree) -> Skeleton:
    """Vertices p <= m; the colour-i edge at p has range p and source p + e_i."""
    m = tuple(m)
    if len(m) != k:
        raise MalformedSkeleton(f"degree {m} does not have {k} coordinates")
    points = list(box(m))
    edges = []
    for p in points:
        for i in range(1, k + 1):
            q = add(p, unit(k, i))
            if leq(q, m):
                edges.append(Edge(_omega_edge(i, p), i, fmt(q), fmt(p)))
    squares = []
    for p in points:
        for i, j in itertools.combinations(range(1, k + 1), 2):
            pi, pj = add(p, unit(k, i)), add(p, unit(k, j))
            if leq(add(pi, unit(k, j)), m):
                squares.append(Square((_omega_edge(i, p), _omega_edge(j, pi)),
                                      (_omega_edge(j, p), _omega_edge(i, pj))))
    return Skeleton(k, tuple(fmt(p) for p in points), tuple(edges), tuple(squares))


def _omega_edge(i: int, p) -> str:
    return f"e{i}_{fmt(p)}"


# -- pullback -----------------------------------------------------------------

def build_pullback(sk: Skeleton, f) -> Skeleton:
    """Pullback along f: N^k -> N^rank given as a rank x k matrix of naturals.

    The colour-i edges are the pairs (lam, e_i) with d(lam) = f(e_i); a vertex
    (v, 0) keeps the name v.
    """
    return _pullback(sk, f)[0]


def _pullback(sk: Skeleton, f):
    rows = [list(r) for r in f]
    if len(rows) != sk.rank:
        raise MalformedSkeleton(f"f must have {sk.rank} rows")
    k = len(rows[0])
    if any(len(r) != k for r in rows) or any(x < 0 for r in rows for x in r):
        raise MalformedSkeleton("f must be a rectangular matrix of naturals")
    columns = [tuple(rows[r][i] for r in range(sk.rank)) for i in range(k)]
    for j in range(1, sk.rank + 1):
        if unit(sk.rank, j) not in columns:
            raise NotSurjective(f"e_{j} is not the image of any generator")

    names: dict[tuple[Path, int], str] = {}
    edges = []
    for i, col in enumerate(columns, start=1):
        for v in sk.vertices:
            for lam in sorted(paths_from(sk, v, col), key=Path.sort_key):
                name = "(" + (",".join(lam.word) if lam.word else lam.range) + f",e{i})"
                names[(lam, i)] = name
                edges.append(Edge(name, i, lam.source, lam.range))
    squares = []
    by_colour = {i: [key for key in names if key[1] == i] for i in range(1, k + 1)}
    for i, j in itertools.combinations(range(1, k + 1), 2):
        for lam, _ in by_colour[i]:
            for mu, _ in by_colour[j]:
                if lam.source != mu.range:
                    continue
                kappa = compose(sk, lam, mu)
                cj = columns[j - 1]
                first = segment(sk, kappa, zero(sk.rank), cj)
                second = segment(sk, kappa, cj, kappa.degree)
                squares.append(Square((names[(lam, i)], names[(mu, j)]),
                                      (names[(first, j)], names[(second, i)])))
    return Skeleton(k, sk.vertices, tuple(edges), tuple(squares)), names


# -- skew windows -------------------------------------------------------------

@dataclass
class SkewWindow:
    skeleton: Skeleton
    interior: frozenset
    deleted_edges: int
    deleted_squares: int
    repair_rounds: int


def window_vertex(v: str, m) -> str:
    return f"{v}_{fmt(m)}"


def window_edge(e: str, m) -> str:
    return f"{e}^{fmt(m)}"


def skew_window_details(sk: Skeleton, c: Functor, lo, hi) -> SkewWindow:
    """Finite window lo <= m <= hi of the skew product with r(e, m) = (r(e), m), s(e, m) = (s(e), m + c(e)).

    Edges leaving the window are dropped, squares survive when all four edges
    do, and any word left without a square has its range-side edge deleted,
    repeated until the validator accepts.  Deleting on the range side keeps
    every hereditary cone of the window intact.
    """
    lo, hi = tuple(lo), tuple(hi)
    if len(lo) != c.rank or len(hi) != c.rank:
        raise MalformedSkeleton("window corners must have the functor's rank")
    if not leq(lo, hi):
        raise EmptyWindow(f"{lo} is not below {hi}")
    if not c.is_compatible(sk):
        raise MalformedSkeleton("functor is not compatible with the squares")
    grid = [tuple(a + b for a, b in zip(lo, off)) for off in box(tuple(h - l for l, h in zip(lo, hi)))]
    inside = set(grid)
    vertices = [window_vertex(v, m) for v in sk.vertices for m in grid]
    edges = {}
    for e in sk.edges:
        shift = c.edge_values[e.name]
        for m in grid:
            m2 = add(m, shift)
            if m2 in inside:
                name = window_edge(e.name, m)
                edges[name] = Edge(name, e.colour, window_vertex(e.source, m2), window_vertex(e.range, m))
    squares = []
    for sq in sk.squares:
        (a, b), (cc, d) = sq.first, sq.second
        for m in grid:
            ma = add(m, c.edge_values[a])
            mc = add(m, c.edge_values[cc])
            names = (window_edge(a, m), window_edge(b, ma), window_edge(cc, m), window_edge(d, mc))
            if all(n in edges for n in names):
                squares.append(Square(names[:2], names[2:]))
    total_squares = len(squares)
    total_edges = len(edges)

    rounds = 0
    while True:
        out = Skeleton(sk.rank, tuple(vertices), tuple(edges.values()), tuple(squares))
        report = validate(out)
        if report.accepted:
            break
        rounds += 1
        doomed = {issue.edges[0] for issue in report.issues}
        for name in doomed:
            edges.pop(name, None)
        squares = [s for s in squares if not (set(s.first) | set(s.second)) & doomed]

    interior = set()
    for v in sk.vertices:
        incoming = sk.edges_at[v]
        for m in grid:
            if all(window_edge(e.name, m) in edges for e in incoming):
                interior.add(window_vertex(v, m))
    return SkewWindow(out, frozenset(interior), total_edges - len(edges), total_squares - len(squares), rounds)


def build_skew_window(sk: Skeleton, c: Functor, lo, hi) -> Skeleton:
    return skew_window_details(sk, c, lo, hi).skeleton


# -- products -----------------------------------------------------------------

def build_product(sk1: Skeleton, sk2: Skeleton) -> Skeleton:
    """Cartesian product; colours of the second factor are shifted past the first."""
    j = sk1.rank

    def vname(v, w):
        return f"({v},{w})"

    vertices = [vname(v, w) for v in sk1.vertices for w in sk2.vertices]
    edges = []
    for e in sk1.edges:
        for w in sk2.vertices:
            edges.append(Edge(f"({e.name},{w})", e.colour, vname(e.source, w), vname(e.range, w)))
    for v in sk1.vertices:
        for f in sk2.edges:
            edges.append(Edge(f"({v},{f.name})", j + f.colour, vname(v, f.source), vname(v, f.range)))
    squares = []
    for sq in sk1.squares:
        for w in sk2.vertices:
            squares.append(Square(tuple(f"({x},{w})" for x in sq.first), tuple(f"({x},{w})" for x in sq.second)))
    for sq in sk2.squares:
        for v in sk1.vertices:
            squares.append(Square(tuple(f"({v},{x})" for x in sq.first), tuple(f"({v},{x})" for x in sq.second)))
    for e in sk1.edges:
        for f in sk2.edges:
            squares.append(Square((f"({e.name},{f.range})", f"({e.source},{f.name})"),
                                  (f"({e.range},{f.name})", f"({e.name},{f.source})")))
    return Skeleton(j + sk2.rank, tuple(vertices), tuple(edges), tuple(squares))


# -- the 1-graph pullback with a skewing functor ------------------------------

@dataclass
class Example42:
    skeleton: Skeleton
    functor: Functor
    base: Skeleton
    c0: dict
    k: int
    edge_of: dict  # (base edge name, colour) -> pullback edge name


def _as_vector(value, k: int) -> tuple[int, ...]:
    if isinstance(value, int):
        if not 0 <= value < k:
            raise MalformedSkeleton(f"c0 index {value} must lie in 0..{k - 1}")
        return unit(k, value) if value else zero(k)
    vec = tuple(value)
    if len(vec) != k or vec[-1] != 0 or sum(vec) > 1 or any(x not in (0, 1) for x in vec):
        raise MalformedSkeleton(f"c0 value {vec} must be 0 or some e_j with j < {k}")
    return vec


def build_example42(E: Skeleton, c0: dict, k: int) -> Example42:
    """Pullback of a 1-graph under n -> |n| with the functor

    c(lam, n)_j = c0(lam)_j - sum_{i != j} n_i for j < k, and |lam| for j = k.
    """
    if E.rank != 1:
        raise MalformedSkeleton("the base must be a 1-graph")
    if k < 2:
        raise MalformedSkeleton("k must be at least 2")
    vectors = {e.name: _as_vector(c0[e.name], k) for e in E.edges}
    sk, names = _pullback(E, [[1] * k])
    values = {}
    edge_of = {}
    for (lam, colour), name in names.items():
        base_name = lam.word[0]
        edge_of[(base_name, colour)] = name
        base_vec = vectors[base_name]
        values[name] = tuple(base_vec[j] - (0 if j == colour - 1 else 1) for j in range(k - 1)) + (1,)
    functor = Functor(k, values)
    if functor.square_defects(sk):
        raise MalformedSkeleton("skewing functor is not square compatible")
    return Example42(sk, functor, E, vectors, k, edge_of)


def _formula_c(ex: Example42, word, n) -> tuple[int, ...]:
    k = ex.k
    base = [0] * k
    for name in word:
        for j, x in enumerate(ex.c0[name]):
            base[j] += x
    total = sum(n)
    return tuple(base[j] - (total - n[j]) for j in range(k - 1)) + (len(word),)


def _lift(ex: Example42, word, n) -> tuple[str, ...]:
    """The pullback path (word, n) written along the sorted colour sequence of n."""
    return tuple(ex.edge_of[(name, col)] for name, col in zip(word, colour_sequence(n)))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class IdentityReport:
    name: str
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_skew_identities(ex, N: int) -> list[IdentityReport]:
    """Exhaustive checks of the degree bookkeeping for paths of length N.

    1. For alpha, beta in E^N, the degrees a, b built from c0 satisfy
       c(alpha, a) = c(beta, b); sources in the skew product agree exactly
       when s(alpha) = s(beta).
    2. For (eta, m), (zeta, n), (eta, a), (zeta, b) with common range, equal
       sources in each pair forces a + n = m + b.
    3. The functor computed edge by edge agrees with the closed formula.
    """
    if not isinstance(ex, Example42):
        raise NotExample42Graph("expected the output of build_example42")
    E, k = ex.base, ex.k
    words = []
    for v in E.vertices:
        words.extend(p for p in paths_from(E, v, (N,)))
    words.sort(key=Path.sort_key)

    def cvec(word):
        out = [0] * k
        for name in word:
            for j, x in enumerate(ex.c0[name]):
                out[j] += x
        return out

    def c_of(word, n):
        return ex.functor.value(_lift(ex, word, n)) if word else _formula_c(ex, word, n)

    matching = IdentityReport("matching degrees", 0, [])
    for alpha in words:
        for beta in words:
            a = tuple(cvec(beta.word)[:k - 1]) + (N - sum(cvec(beta.word)),)
            b = tuple(cvec(alpha.word)[:k - 1]) + (N - sum(cvec(alpha.word)),)
            matching.checked += 1
            if sum(a) != N or sum(b) != N or min(a + b) < 0:
                matching.failures.append((str(alpha), str(beta), a, b, "not in the pullback"))
                continue
            ca, cb = c_of(alpha.word, a), c_of(beta.word, b)
            same_source = (alpha.source, ca) == (beta.source, cb)
            if ca != cb or same_source != (alpha.source == beta.source):
                matching.failures.append((str(alpha), str(beta), a, b, ca, cb))

    degrees = list(_compositions(N, k))
    shift_law = IdentityReport("a + n = m + b", 0, [])
    for eta in words:
        for zeta in words:
            if eta.range != zeta.range:
                continue
            for m in degrees:
                for n in degrees:
                    if eta.source != zeta.source or c_of(eta.word, m) != c_of(zeta.word, n):
                        continue
                    for a in degrees:
                        for b in degrees:
                            if c_of(eta.word, a) != c_of(zeta.word, b):
                                continue
                            shift_law.checked += 1
                            if add(a, n) != add(m, b):
                                shift_law.failures.append((str(eta), str(zeta), m, n, a, b))

    formula = IdentityReport("functor formula", 0, [])
    for lam in words:
        for n in degrees:
            formula.checked += 1
            if ex.functor.value(_lift(ex, lam.word, n)) != _formula_c(ex, lam.word, n):
                formula.failures.append((str(lam), n))
    return [matching, shift_law, formula]


# -- helpers ------------------------------------------------------------------

def disjoint_union(*parts: Skeleton, prefixes=None) -> Skeleton:
    """Disjoint union; names are prefixed when they would clash."""
    rank = parts[0].rank
    if any(p.rank != rank for p in parts):
        raise MalformedSkeleton("all parts must have the same rank")
    prefixes = prefixes or [f"g{t}_" for t in range(len(parts))]
    vertices, edges, squares = [], [], []
    for pre, sk in zip(prefixes, parts):
        vertices += [pre + v for v in sk.vertices]
        edges += [Edge(pre + e.name, e.colour, pre + e.source, pre + e.range) for e in sk.edges]
        squares += [Square(tuple(pre + x for x in s.first), tuple(pre + x for x in s.second)) for s in sk.squares]
    return Skeleton(rank, tuple(vertices), tuple(edges), tuple(squares))


def subdivide(sk: Skeleton) -> Skeleton:
    """Replace every edge of a 1-graph by a path of two edges through a new vertex."""
    if sk.rank != 1:
        raise MalformedSkeleton("subdivision is only defined for 1-graphs")
    vertices = list(sk.vertices)
    edges = []
    for e in sk.edges:
        mid = f"{e.name}-mid"
        vertices.append(mid)
        edges.append(Edge(f"{e.name}-a", 1, mid, e.range))
        edges.append(Edge(f"{e.name}-b", 1, e.source, mid))
    return Skeleton(1, tuple(vertices), tuple(edges), ())


def find_isomorphism(sk1: Skeleton, sk2: Skeleton, *, match_colours: bool = True):
    """Search for a colour-preserving bijection of vertices and edges carrying squares to squares.

    Returns (vertex_map, edge_map) or None.  Backtracking over edges; meant
    for small graphs.
    """
    if (sk1.rank, len(sk1.vertices), len(sk1.edges), len(sk1.squares)) != \
            (sk2.rank, len(sk2.vertices), len(sk2.edges), len(sk2.squares)):
        return None
    squares2 = {(s.first, s.second) for s in sk2.squares}
    edges1 = list(sk1.edges)
    isolated1 = [v for v in sk1.vertices if not any(v in (e.source, e.range) for e in sk1.edges)]
    isolated2 = [v for v in sk2.vertices if not any(v in (e.source, e.range) for e in sk2.edges)]
    if len(isolated1) != len(isolated2):
        return None

    def extend(t, vmap, emap, used_v, used_e):
        if t == len(edges1):
            mapped = {(tuple(emap[x] for x in s.first), tuple(emap[x] for x in s.second)) for s in sk1.squares}
            canon = set()
            for first, second in mapped:
                if sk2.edge[first[0]].colour < sk2.edge[first[1]].colour:
                    canon.add((first, second))
                else:
                    canon.add((second, first))
            return (dict(vmap), dict(emap)) if canon == squares2 else None
        e = edges1[t]
        for f in sk2.edges:
            if f.name in used_e or (match_colours and f.colour != e.colour):
                continue
            pairs = [(e.source, f.source), (e.range, f.range)]
            added = []
            ok = True
            for a, b in pairs:
                if a in vmap:
                    if vmap[a] != b:
                        ok = False
                        break
                elif b in used_v:
                    ok = False
                    break
                else:
                    vmap[a] = b
                    used_v.add(b)
                    added.append(a)
            if ok:
                emap[e.name] = f.name
                used_e.add(f.name)
                found = extend(t + 1, vmap, emap, used_v, used_e)
                if found:
                    for a, b in zip(isolated1, isolated2):
                        found[0][a] = b
                    return found
                used_e.discard(f.name)
                del emap[e.name]
            for a in added:
                used_v.discard(vmap.pop(a))
        return None

    return extend(0, {}, {}, set(), set())
