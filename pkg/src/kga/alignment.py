"""Minimal common extensions, Ext sets and the exhaustiveness decider.

The decider walks a finite automaton whose states are a vertex together with
one residual set per member of F.  Reading an edge g replaces every residual
R by ext(g, R); by the composition law for Ext the residual for a member mu
after reading a prefix lam is exactly ext(lam, {mu}).  An empty residual tuple
means the prefix is incompatible with all of F, a residual holding a vertex
means the prefix already extends mu and every continuation is safe.
"""

from __future__ import annotations

import hashlib
import os
from collections import deque
from dataclasses import dataclass

from .core import Skeleton, join, leq, norm, sub, zero
from .errors import LimitExceeded, RangeMismatch
from .paths import Path, compose, normalize, paths_from, segment, sort_paths

DEFAULT_MAX_STATES = 10**6


def max_states() -> int:
    raw = os.environ.get("KGA_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES


def _check_ranges(mu: Path, nu: Path):
    if mu.range != nu.range:
        raise RangeMismatch(f"r({mu}) = {mu.range} but r({nu}) = {nu.range}")


def mce(sk: Skeleton, mu: Path, nu: Path) -> frozenset[Path]:
    """All lam of degree d(mu) v d(nu) with lam(0, d(mu)) = mu and lam(0, d(nu)) = nu."""
    _check_ranges(mu, nu)
    memo = sk.cache.setdefault("mce", {})
    key = (mu, nu)
    hit = memo.get(key)
    if hit is not None:
        return hit
    top = join(mu.degree, nu.degree)
    # extend whichever side needs the shorter extension and filter on the other
    base, other = (mu, nu) if norm(sub(top, mu.degree)) <= norm(sub(top, nu.degree)) else (nu, mu)
    k0 = zero(sk.rank)
    if top == base.degree:
        ok = segment(sk, base, k0, other.degree) == other
        result = frozenset({base}) if ok else frozenset()
    else:
        out = []
        for tau in paths_from(sk, base.source, sub(top, base.degree)):
            lam = compose(sk, base, tau)
            if segment(sk, lam, k0, other.degree) == other:
                out.append(lam)
        result = frozenset(out)
    memo[key] = result
    memo[(nu, mu)] = result
    return result


def mce_pairs(sk: Skeleton, mu: Path, nu: Path) -> frozenset[tuple[Path, Path]]:
    """{(alpha, beta) : mu alpha = nu beta in mce(mu, nu)}."""
    out = []
    for lam in mce(sk, mu, nu):
        out.append((segment(sk, lam, mu.degree, lam.degree), segment(sk, lam, nu.degree, lam.degree)))
    return frozenset(out)


def compatible(sk: Skeleton, mu: Path, nu: Path) -> bool:
    return bool(mce(sk, mu, nu))


def _ext_one(sk: Skeleton, lam: Path, mu: Path) -> frozenset[Path]:
    memo = sk.cache.setdefault("ext", {})
    key = (lam, mu)
    hit = memo.get(key)
    if hit is None:
        hit = frozenset(segment(sk, kappa, lam.degree, kappa.degree) for kappa in mce(sk, lam, mu))
        memo[key] = hit
    return hit


def ext(sk: Skeleton, lam: Path, E) -> frozenset[Path]:
    """Ext(lam; E) = union over mu in E of {tau : lam tau in MCE(lam, mu)}."""
    out = set()
    for mu in E:
        _check_ranges(lam, mu)
        out |= _ext_one(sk, lam, mu)
    return frozenset(out)


@dataclass
class ExhaustiveResult:
    exhaustive: bool
    witness: Path | None
    states: int
    transcript: str

    def __iter__(self):
        yield self.exhaustive
        yield self.witness


def _state_text(vertex: str, residuals) -> str:
    parts = [vertex]
    for res in residuals:
        parts.append("{" + ";".join(sorted(f"{p.range}:{'.'.join(p.word)}" for p in res)) + "}")
    return "|".join(parts)


def is_exhaustive(sk: Skeleton, v: str, F, *, limit: int | None = None) -> ExhaustiveResult:
    """Decide whether F is exhaustive at v, i.e. every path from v meets some member of F.

    Breadth-first search over residual states; the first failing state found
    gives a shortest witness in edge count.
    """
    members = sort_paths(set(F))
    for mu in members:
        if mu.range != v:
            raise RangeMismatch(f"member {mu} does not have range {v}")
    digest = hashlib.sha256()
    if not members:
        return ExhaustiveResult(False, normalize(sk, (), vertex=v), 0, digest.hexdigest())
    if any(mu.is_vertex for mu in members):
        return ExhaustiveResult(True, None, 0, digest.hexdigest())
    cap = limit if limit is not None else max_states()

    start = (v, tuple(frozenset({mu}) for mu in members))
    parent: dict = {start: None}
    queue = deque([start])
    digest.update(_state_text(*start).encode())
    while queue:
        state = queue.popleft()
        u, residuals = state
        for g in sk.edges_at[u]:
            gp = Path((g.name,), u, g.source, _edge_degree(sk, g.colour))
            new = []
            safe = False
            for res in residuals:
                nxt = set()
                for rho in res:
                    nxt |= _ext_one(sk, gp, rho)
                if any(p.is_vertex for p in nxt):
                    safe = True
                    break
                new.append(frozenset(nxt))
            if safe:
                continue
            nstate = (g.source, tuple(new))
            if nstate in parent:
                continue
            parent[nstate] = (state, g.name)
            if not any(new):
                witness = _rebuild(sk, parent, nstate)
                digest.update(_state_text(*nstate).encode())
                return ExhaustiveResult(False, witness, len(parent), digest.hexdigest())
            if len(parent) > cap:
                raise LimitExceeded(f"exhaustiveness search exceeded {cap} states")
            digest.update(_state_text(*nstate).encode())
            queue.append(nstate)
    return ExhaustiveResult(True, None, len(parent), digest.hexdigest())


def _edge_degree(sk: Skeleton, colour: int):
    return tuple(1 if i == colour - 1 else 0 for i in range(sk.rank))


def _rebuild(sk: Skeleton, parent, state) -> Path:
    word = []
    while parent[state] is not None:
        state, name = parent[state]
        word.append(name)
    word.reverse()
    return normalize(sk, word)


def witness_is_valid(sk: Skeleton, witness: Path, F) -> bool:
    """A witness must be incompatible with every member of F."""
    return all(not mce(sk, witness, mu) for mu in F)


def extends(sk: Skeleton, lam: Path, mu: Path) -> bool:
    """True when lam = mu tau for some tau."""
    return lam.range == mu.range and leq(mu.degree, lam.degree) and \
        segment(sk, lam, zero(sk.rank), mu.degree) == mu
