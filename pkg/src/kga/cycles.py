"""Conventional cycles, generalised cycles and entrances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .alignment import ext, is_exhaustive
from .core import Degree, Skeleton, box, is_zero, meet
from .errors import EndpointMismatch, LimitExceeded, NotACycle
from .paths import Path, normalize, paths_from, sort_paths, vertex_path

MAX_PAIRS = 200_000


def _shortest_return(sk: Skeleton, v: str) -> int | None:
    """Length of the shortest closed walk at v (following edges from range to source)."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for e in sk.edges_at[u]:
            if e.source == v:
                return dist[u] + 1
            if e.source not in dist:
                dist[e.source] = dist[u] + 1
                queue.append(e.source)
    return None


def _closed_walks(sk: Skeleton, v: str, length: int):
    def walk(u, word):
        if len(word) == length:
            if u == v:
                yield tuple(word)
            return
        for e in sk.edges_at[u]:
            word.append(e.name)
            yield from walk(e.source, word)
            word.pop()
    yield from walk(v, [])


def has_conventional_cycle(sk: Skeleton) -> tuple[bool, Path | None]:
    """Directed cycle in the coloured multigraph; the certificate is the
    lexicographically least canonical word among the shortest cycles."""
    lengths = {v: _shortest_return(sk, v) for v in sk.vertices}
    found = [x for x in lengths.values() if x is not None]
    if not found:
        return False, None
    shortest = min(found)
    best = None
    for v in sk.vertices:
        if lengths[v] != shortest:
            continue
        for word in _closed_walks(sk, v, shortest):
            p = normalize(sk, word)
            if best is None or (p.word, p.range) < (best.word, best.range):
                best = p
    return True, best


def is_cycle(p: Path) -> bool:
    return p.range == p.source and not p.is_vertex


def cycles_upto(sk: Skeleton, bound: Degree, vertices=None) -> list[Path]:
    """All paths lam with r(lam) = s(lam) and 0 != d(lam) <= bound, sorted."""
    out = []
    for v in (vertices if vertices is not None else sk.vertices):
        for m in box(bound):
            if is_zero(m):
                continue
            out.extend(p for p in paths_from(sk, v, m) if p.source == v)
    return sort_paths(out)


def _check_pair(mu: Path, nu: Path):
    if mu == nu:
        raise EndpointMismatch("a generalised cycle needs two distinct paths")
    if mu.range != nu.range or mu.source != nu.source:
        raise EndpointMismatch(f"{mu} and {nu} do not share range and source")


def gen_cycle_test(sk: Skeleton, mu: Path, nu: Path):
    """The exhaustiveness result behind is_generalised_cycle."""
    _check_pair(mu, nu)
    return is_exhaustive(sk, mu.source, ext(sk, mu, {nu}))


def is_generalised_cycle(sk: Skeleton, mu: Path, nu: Path) -> bool:
    """MCE(mu tau, nu) is non-empty for every tau, decided as: Ext(mu; {nu}) is exhaustive at s(mu)."""
    return gen_cycle_test(sk, mu, nu).exhaustive


@dataclass(frozen=True)
class GenCycle:
    mu: Path
    nu: Path
    has_entrance: bool
    entrance: Path | None
    transcript: str

    def as_json(self) -> dict:
        return {
            "mu": self.mu.as_json(),
            "nu": self.nu.as_json(),
            "has_entrance": self.has_entrance,
            "entrance": self.entrance.as_json() if self.entrance else None,
            "transcript_sha256": self.transcript,
        }


def find_generalised_cycles(sk: Skeleton, bound: Degree, *, reduced: bool = True,
                            max_pairs: int = MAX_PAIRS) -> list[GenCycle]:
    """All generalised cycles (mu, nu) with d(mu), d(nu) <= bound, complete up to the bound.

    An unordered pair is reported once: when both orders pass it is reported
    with d(mu) lexicographically >= d(nu) and no entrance; when only one order
    passes, that order is reported together with an entrance.  With
    `reduced`, only pairs with d(mu) ^ d(nu) = 0 are searched.
    """
    groups: dict[tuple[str, str], list[Path]] = {}
    for v in sk.vertices:
        for m in box(bound):
            for p in paths_from(sk, v, m):
                groups.setdefault((p.range, p.source), []).append(p)
    pairs = []
    for key in sorted(groups):
        members = sort_paths(groups[key])
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                mu, nu = members[a], members[b]
                if reduced and not is_zero(meet(mu.degree, nu.degree)):
                    continue
                if mu.degree < nu.degree or (mu.degree == nu.degree and mu.word > nu.word):
                    mu, nu = nu, mu
                pairs.append((mu, nu))
    if len(pairs) > max_pairs:
        raise LimitExceeded(f"{len(pairs)} candidate pairs exceed the cap {max_pairs}")
    out = []
    for mu, nu in pairs:
        forward = gen_cycle_test(sk, mu, nu)
        backward = gen_cycle_test(sk, nu, mu)
        if forward.exhaustive and backward.exhaustive:
            out.append(GenCycle(mu, nu, False, None, forward.transcript))
        elif forward.exhaustive:
            out.append(GenCycle(mu, nu, True, _entrance(sk, nu, mu, backward), forward.transcript))
        elif backward.exhaustive:
            out.append(GenCycle(nu, mu, True, _entrance(sk, mu, nu, forward), backward.transcript))
    return out


def _entrance(sk: Skeleton, nu: Path, mu: Path, failed) -> Path:
    """tau in s(nu)Lambda with MCE(nu tau, mu) empty, read off the failed reverse test."""
    if failed.witness is not None:
        return failed.witness
    return vertex_path(sk, nu.source)


def gen_cycle_entrance(sk: Skeleton, mu: Path, nu: Path) -> tuple[bool, Path | None]:
    """Entrance of a generalised cycle (mu, nu): the reversed pair must fail."""
    back = gen_cycle_test(sk, nu, mu)
    if back.exhaustive:
        return False, None
    return True, _entrance(sk, nu, mu, back)


def cycle_has_entrance(sk: Skeleton, rho: Path) -> tuple[bool, Path | None]:
    """An entrance is a path tau from r(rho) with MCE(tau, rho) empty."""
    if not is_cycle(rho):
        raise NotACycle(f"{rho} is not a cycle")
    res = is_exhaustive(sk, rho.range, {rho})
    return (not res.exhaustive), res.witness
