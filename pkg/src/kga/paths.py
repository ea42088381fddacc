"""Path calculus: canonical forms, composition, segments and enumeration.

A path is stored as its canonical word, the unique edge word whose colours
are non-decreasing from the range end.  Every composable word is brought to
that form by bubble rewriting with squares; on an accepted skeleton the
result does not depend on the order of the rewrites.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Degree, Skeleton, add, box, colour_sequence, is_zero, leq, sub, unit, vertex_matrix, zero
from .errors import LimitExceeded, NotComposable, OutOfRange

DEGREE_LIMIT = 12


@dataclass(frozen=True)
class Path:
    word: tuple[str, ...]
    range: str
    source: str
    degree: Degree

    def __str__(self):
        return ".".join(self.word) if self.word else self.range

    def __len__(self):
        return len(self.word)

    @property
    def is_vertex(self) -> bool:
        return not self.word

    def sort_key(self):
        return (sum(self.degree), self.degree, self.word, self.range)

    def as_json(self):
        if self.word:
            return list(self.word)
        return {"vertex": self.range}


def sort_paths(paths) -> list[Path]:
    return sorted(paths, key=Path.sort_key)


def vertex_path(sk: Skeleton, v: str) -> Path:
    if v not in sk.vertices:
        raise KeyError(f"unknown vertex {v}")
    return Path((), v, v, zero(sk.rank))


def check_composable(sk: Skeleton, word) -> None:
    for t, name in enumerate(word):
        if name not in sk.edge:
            raise NotComposable(t, f"unknown edge {name}")
    for t in range(len(word) - 1):
        if sk.edge[word[t]].source != sk.edge[word[t + 1]].range:
            raise NotComposable(t, f"s({word[t]}) != r({word[t + 1]})")


def rewrite_to(sk: Skeleton, word, colours) -> tuple[list[str], int]:
    """Rewrite a composable word by squares until its colour sequence is `colours`.

    At each position the nearest edge of the wanted colour is pulled to the
    front by adjacent square swaps.  Returns the new word and the swap count.
    """
    w = list(word)
    swaps = 0
    partner = sk.partner
    edge = sk.edge
    for p, col in enumerate(colours):
        q = p
        while edge[w[q]].colour != col:
            q += 1
        while q > p:
            w[q - 1], w[q] = partner[(w[q - 1], w[q])]
            swaps += 1
            q -= 1
    return w, swaps


def normalize(sk: Skeleton, word, vertex: str | None = None) -> Path:
    """Canonical form of a composable word; `vertex` is needed for the empty word."""
    word = tuple(word)
    if not word:
        if vertex is None:
            raise NotComposable(0, "empty word needs a vertex")
        return vertex_path(sk, vertex)
    check_composable(sk, word)
    degree = sk.degree_of(word)
    canon, _ = rewrite_to(sk, word, colour_sequence(degree))
    return Path(tuple(canon), sk.edge[word[0]].range, sk.edge[word[-1]].source, degree)


def path(sk: Skeleton, *names: str) -> Path:
    """Shorthand: path(sk, 'a', 'b') is the morphism a.b; path(sk, v) for a vertex v."""
    if len(names) == 1 and names[0] in sk.vertices:
        return vertex_path(sk, names[0])
    return normalize(sk, names)


def _canonical_unchecked(sk: Skeleton, word, range_: str, source: str, degree: Degree) -> Path:
    if not word:
        return Path((), range_, range_, degree)
    canon, _ = rewrite_to(sk, word, colour_sequence(degree))
    return Path(tuple(canon), range_, source, degree)


def compose(sk: Skeleton, mu: Path, nu: Path) -> Path:
    if mu.source != nu.range:
        raise NotComposable(len(mu.word), f"s({mu}) = {mu.source} but r({nu}) = {nu.range}")
    if not nu.word:
        return mu
    if not mu.word:
        return nu
    return _canonical_unchecked(sk, mu.word + nu.word, mu.range, nu.source, add(mu.degree, nu.degree))


def segment(sk: Skeleton, lam: Path, m: Degree, n: Degree) -> Path:
    """The unique piece of degree n - m sitting between the prefix of degree m and the suffix."""
    d = lam.degree
    if not (leq(m, n) and leq(n, d)):
        raise OutOfRange(f"need {m} <= {n} <= {d}")
    memo = sk.cache.setdefault("segment", {})
    key = (lam.word, lam.range, m, n)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if m == n:
        result = Path((), _vertex_at(sk, lam, m), _vertex_at(sk, lam, m), zero(sk.rank))
    elif is_zero(m) and n == d:
        result = lam
    else:
        colours = colour_sequence(m) + colour_sequence(sub(n, m)) + colour_sequence(sub(d, n))
        w, _ = rewrite_to(sk, lam.word, colours)
        a, b = sum(m), sum(n)
        middle = tuple(w[a:b])
        result = Path(middle, sk.edge[middle[0]].range, sk.edge[middle[-1]].source, sub(n, m))
    memo[key] = result
    return result


def _vertex_at(sk: Skeleton, lam: Path, m: Degree) -> str:
    """The vertex lam(m): source of the prefix of degree m."""
    if is_zero(m):
        return lam.range
    if m == lam.degree:
        return lam.source
    colours = colour_sequence(m) + colour_sequence(sub(lam.degree, m))
    w, _ = rewrite_to(sk, lam.word, colours)
    return sk.edge[w[sum(m) - 1]].source


def vertex_at(sk: Skeleton, lam: Path, m: Degree) -> str:
    if not leq(m, lam.degree):
        raise OutOfRange(f"{m} is not below {lam.degree}")
    return _vertex_at(sk, lam, m)


def factor(sk: Skeleton, lam: Path, m: Degree) -> tuple[Path, Path]:
    """The unique (mu, nu) with lam = mu nu and d(mu) = m."""
    return segment(sk, lam, zero(sk.rank), m), segment(sk, lam, m, lam.degree)


def _check_bound(n: Degree, limit: int):
    if any(x > limit for x in n):
        raise LimitExceeded(f"degree {n} exceeds the per-coordinate enumeration limit {limit}")


def paths_from(sk: Skeleton, v: str, n: Degree, *, limit: int = DEGREE_LIMIT) -> frozenset[Path]:
    """The set v.Lambda^n of paths with range v and degree n.

    Canonical words are exactly the composable words with sorted colours, so
    the recursion peels the lowest non-zero colour off the range end.
    """
    _check_bound(n, limit)
    return _paths_from(sk, v, tuple(n))


def _paths_from(sk: Skeleton, v: str, n: Degree) -> frozenset[Path]:
    memo = sk.cache.setdefault("paths_from", {})
    key = (v, n)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if is_zero(n):
        result = frozenset({Path((), v, v, n)})
    else:
        i = next(t for t, x in enumerate(n) if x) + 1
        rest = sub(n, unit(sk.rank, i))
        out = []
        for e in sk.in_edges(v, i):
            for tail in _paths_from(sk, e.source, rest):
                out.append(Path((e.name,) + tail.word, v, tail.source, n))
        result = frozenset(out)
    memo[key] = result
    return result


def paths_from_leq(sk: Skeleton, v: str, n: Degree, *, limit: int = DEGREE_LIMIT) -> frozenset[Path]:
    """v.Lambda^{<=n}: paths of degree m <= n that cannot be extended in any colour i with m_i < n_i."""
    _check_bound(n, limit)
    out = []
    k = sk.rank
    for m in _degrees_upto(n):
        for lam in _paths_from(sk, v, m):
            if all(m[i] == n[i] or not sk.in_edges(lam.source, i + 1) for i in range(k)):
                out.append(lam)
    return frozenset(out)


def _degrees_upto(n: Degree):
    return box(n)


def paths_upto(sk: Skeleton, v: str, n: Degree, *, limit: int = DEGREE_LIMIT) -> list[Path]:
    """All paths with range v and degree <= n, sorted."""
    _check_bound(n, limit)
    out = []
    for m in _degrees_upto(n):
        out.extend(_paths_from(sk, v, m))
    return sort_paths(out)


def all_paths_upto(sk: Skeleton, n: Degree, *, limit: int = DEGREE_LIMIT) -> list[Path]:
    out = []
    for v in sk.vertices:
        out.extend(paths_upto(sk, v, n, limit=limit))
    return out


def count_paths(sk: Skeleton, v: str, n: Degree) -> int:
    """|v.Lambda^n| by products of vertex matrices (independent of enumeration)."""
    idx = sk.vertices.index(v)
    row = [0] * len(sk.vertices)
    row[idx] = 1
    for i, times in enumerate(n):
        mat = vertex_matrix(sk, i + 1)
        for _ in range(times):
            row = [sum(row[a] * mat[a][b] for a in range(len(row))) for b in range(len(row))]
    return sum(row)
