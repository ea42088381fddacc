"""Hereditary and saturated vertex sets, quotients and the quotient sweeps."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .alignment import is_exhaustive, mce
from .core import Degree, Skeleton, box, is_zero, subskeleton, validate, zero
from .cycles import GenCycle, find_generalised_cycles
from .errors import EndpointMismatch, LimitExceeded, QuotientNotAccepted
from .paths import Path, compose, paths_from, segment, sort_paths

MAX_GENERATING_SETS = 2**16


@dataclass(frozen=True)
class VertexSet:
    members: frozenset
    hereditary: bool
    saturated: bool | None = None
    bound: Degree | None = None

    def __contains__(self, v):
        return v in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def as_json(self) -> dict:
        return {
            "members": sorted(self.members),
            "hereditary": self.hereditary,
            "saturated_up_to_bound": self.saturated,
            "bound": list(self.bound) if self.bound is not None else None,
        }


def _members(H) -> frozenset:
    return H.members if isinstance(H, VertexSet) else frozenset(H)


def is_hereditary(sk: Skeleton, S) -> bool:
    S = _members(S)
    return all(e.source in S for e in sk.edges if e.range in S)


def hereditary_closure(sk: Skeleton, S) -> VertexSet:
    """Least superset closed under taking sources of paths that end in it."""
    seen = set(_members(S))
    unknown = seen - set(sk.vertices)
    if unknown:
        raise KeyError(f"unknown vertices {sorted(unknown)}")
    queue = deque(sorted(seen))
    while queue:
        u = queue.popleft()
        for e in sk.edges_at[u]:
            if e.source not in seen:
                seen.add(e.source)
                queue.append(e.source)
    return VertexSet(frozenset(seen), True)


def _minimal(sk: Skeleton, paths: list[Path]) -> list[Path]:
    """Drop members that extend another member; exhaustiveness is unchanged."""
    pool = set(paths)
    keep = []
    for lam in paths:
        redundant = False
        for m in box(lam.degree):
            if is_zero(m) or m == lam.degree:
                continue
            if segment(sk, lam, zero(sk.rank), m) in pool:
                redundant = True
                break
        if not redundant:
            keep.append(lam)
    return keep


def absorbing_set(sk: Skeleton, v: str, H, bound: Degree) -> list[Path]:
    """E_B = {lam in v Lambda : 0 != d(lam) <= bound, s(lam) in H}."""
    H = _members(H)
    out = []
    for m in box(bound):
        if is_zero(m):
            continue
        out.extend(p for p in paths_from(sk, v, m) if p.source in H)
    return sort_paths(out)


def saturate(sk: Skeleton, H, bound: Degree) -> VertexSet:
    """Add every v whose paths into H up to `bound` form an exhaustive set, to a fixed point."""
    current = set(_members(H))
    if not is_hereditary(sk, current):
        raise ValueError("saturate expects a hereditary set")
    changed = True
    while changed:
        changed = False
        for v in sk.vertices:
            if v in current:
                continue
            E = absorbing_set(sk, v, current, bound)
            if E and is_exhaustive(sk, v, _minimal(sk, E)).exhaustive:
                current.add(v)
                changed = True
    return VertexSet(frozenset(current), is_hereditary(sk, current), True, tuple(bound))


def quotient(sk: Skeleton, H) -> Skeleton:
    """The graph on the complement of H: edges and squares avoiding H."""
    members = _members(H)
    out = subskeleton(sk, [v for v in sk.vertices if v not in members])
    report = validate(out)
    if not report.accepted:
        raise QuotientNotAccepted("; ".join(i.describe() for i in report.issues[:3]))
    return out


def hereditary_sets(sk: Skeleton, cap: int = MAX_GENERATING_SETS) -> list[VertexSet]:
    """All hereditary sets, generated as unions of single-vertex closures (including the empty set)."""
    closures = {}
    for v in sk.vertices:
        closures[v] = hereditary_closure(sk, {v}).members
    found = {frozenset()}
    frontier = [frozenset()]
    generated = 1
    while frontier:
        nxt = []
        for S in frontier:
            for v in sk.vertices:
                if v in S:
                    continue
                T = S | closures[v]
                generated += 1
                if generated > cap:
                    raise LimitExceeded(f"more than {cap} generating sets")
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [VertexSet(s, True) for s in ordered]


@dataclass(frozen=True)
class SweepHit:
    H: VertexSet
    cycle: GenCycle

    def as_json(self) -> dict:
        return {"H": self.H.as_json(), "gen_cycle": self.cycle.as_json()}


def quotient_gencycle_sweep(sk: Skeleton, bound: Degree, *, cap: int = MAX_GENERATING_SETS,
                            saturation_bound: Degree | None = None) -> list[SweepHit]:
    """Generalised cycles in the quotients by saturated hereditary sets.

    Any hit shows the algebra is not AF.  The search is complete only up to
    the degree bound, and saturation is computed up to `saturation_bound`
    (defaults to `bound`).
    """
    sat_bound = tuple(saturation_bound) if saturation_bound is not None else tuple(bound)
    seen = set()
    hits = []
    for H in hereditary_sets(sk, cap):
        S = saturate(sk, H, sat_bound)
        if S.members in seen or len(S.members) == len(sk.vertices):
            continue
        seen.add(S.members)
        Q = quotient(sk, S)
        for g in find_generalised_cycles(Q, bound):
            hits.append(SweepHit(S, g))
    return hits


def mce_avoiding(sk: Skeleton, H, alpha: Path, beta: Path) -> frozenset[Path]:
    """MCE in the quotient, computed in the full graph minus paths with source in H."""
    members = _members(H)
    return frozenset(p for p in mce(sk, alpha, beta) if p.source not in members)


def meets(H, p: Path) -> bool:
    """True when p lies in Lambda H, i.e. its source is in H."""
    return p.source in _members(H)


def periodicity_witness(sk: Skeleton, H, eta: Path, zeta: Path, bound: Degree) -> Path | None:
    """Least tau (by total degree, then word) of degree <= bound avoiding H with
    MCE(eta tau, zeta tau) inside Lambda H."""
    members = _members(H)
    if eta == zeta or eta.source != zeta.source:
        raise EndpointMismatch("need distinct paths with a common source")
    if meets(members, eta) or meets(members, zeta):
        raise EndpointMismatch("eta and zeta must avoid H")
    candidates = []
    for m in box(bound):
        candidates.extend(t for t in paths_from(sk, eta.source, m) if t.source not in members)
    for tau in sorted(candidates, key=lambda t: (sum(t.degree), t.word)):
        a, b = compose(sk, eta, tau), compose(sk, zeta, tau)
        if a.range != b.range:
            return tau
        if not mce_avoiding(sk, members, a, b):
            return tau
    return None
