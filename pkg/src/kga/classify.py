"""AF verdicts, finite-dimensional decompositions and the structure of graphs
whose cycles have no entrances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .alignment import mce
from .core import Degree, Skeleton, add, box, is_locally_convex, is_zero, meet, unit, vertex_matrix, zero
from .cycles import (GenCycle, cycle_has_entrance, cycles_upto, find_generalised_cycles,
                     has_conventional_cycle, is_cycle, is_generalised_cycle)
from .errors import DegreeOverlap, HasCycle, KGraphError, LimitExceeded, NotACycle, NotLocallyConvex
from .ideals import is_hereditary, periodicity_witness, quotient, quotient_gencycle_sweep
from .linalg import hermite_basis, matmul
from .paths import Path, compose, normalize, paths_from, segment, sort_paths

AF, NOT_AF, UNKNOWN = "AF", "NotAF", "Unknown"


@dataclass(frozen=True)
class Certificate:
    """A machine-checkable reason attached to a verdict.

    kind is one of: "acyclic", "cycle", "gen-cycle", "infinite-projection"
    (a generalised cycle with an entrance) and "quotient-gen-cycle".
    """
    kind: str
    paths: tuple[Path, ...] = ()
    entrance: Path | None = None
    hereditary: tuple[str, ...] = ()
    transcript: str | None = None

    def as_json(self) -> dict:
        out = {"kind": self.kind, "paths": [p.as_json() for p in self.paths]}
        if self.entrance is not None:
            out["entrance"] = self.entrance.as_json()
        if self.hereditary:
            out["H"] = list(self.hereditary)
        if self.transcript:
            out["transcript_sha256"] = self.transcript
        return out


@dataclass(frozen=True)
class Verdict:
    status: str
    reasons: tuple[Certificate, ...]
    bound_used: Degree

    def as_json(self) -> dict:
        return {"status": self.status, "bound": list(self.bound_used),
                "certificates": [c.as_json() for c in self.reasons]}


def gen_certificate(g: GenCycle, H=()) -> Certificate:
    if H:
        kind = "quotient-gen-cycle"
    else:
        kind = "infinite-projection" if g.has_entrance else "gen-cycle"
    return Certificate(kind, (g.mu, g.nu), g.entrance, tuple(sorted(H)), g.transcript)


def classify_af(sk: Skeleton, bound: Degree | None = None, *, sweep: bool = True) -> Verdict:
    """AF exactly when there is no cycle; otherwise NotAF with the cycle and
    any generalised-cycle evidence found up to `bound`."""
    sk.require_accepted()
    bound = tuple(bound) if bound is not None else tuple([1] * sk.rank)
    cyclic, cert = has_conventional_cycle(sk)
    if not cyclic:
        return Verdict(AF, (Certificate("acyclic"),), bound)
    reasons = [Certificate("cycle", (cert,))]
    reasons.extend(gen_certificate(g) for g in find_generalised_cycles(sk, bound))
    if sweep:
        for hit in quotient_gencycle_sweep(sk, bound):
            if hit.H.members:
                reasons.append(gen_certificate(hit.cycle, hit.H.members))
    return Verdict(NOT_AF, tuple(reasons), bound)


def path_from_json(sk: Skeleton, data) -> Path:
    """Inverse of Path.as_json: a list of edge names or {"vertex": v}."""
    if isinstance(data, dict):
        return normalize(sk, (), vertex=data["vertex"])
    return normalize(sk, tuple(data))


def certificate_from_json(sk: Skeleton, doc: dict) -> Certificate:
    """Rebuild a certificate from a JSON report.  Quotient certificates are
    read in the quotient graph, where their paths live."""
    H = tuple(doc.get("H", ()))
    target = quotient(sk, H) if H else sk
    paths = tuple(path_from_json(target, p) for p in doc.get("paths", ()))
    entrance = path_from_json(target, doc["entrance"]) if doc.get("entrance") is not None else None
    return Certificate(doc["kind"], paths, entrance, H, doc.get("transcript_sha256"))


def _reparse(sk: Skeleton, p: Path) -> Path:
    return normalize(sk, p.word, vertex=p.range if p.is_vertex else None)


def verify_certificate(sk: Skeleton, cert: Certificate) -> bool:
    """Re-check a certificate from scratch against the skeleton."""
    try:
        if cert.kind == "acyclic":
            return not has_conventional_cycle(sk)[0]
        paths = [_reparse(sk, p) for p in cert.paths]
        if paths != list(cert.paths):
            return False
        if cert.kind == "cycle":
            return len(paths) == 1 and is_cycle(paths[0])
        if cert.kind in ("gen-cycle", "infinite-projection"):
            mu, nu = paths
            if not is_generalised_cycle(sk, mu, nu):
                return False
            if cert.kind == "gen-cycle":
                return cert.entrance is None
            tau = cert.entrance
            if tau is None or tau.range != nu.source:
                return False
            return not mce(sk, compose(sk, nu, _reparse(sk, tau)), mu)
        if cert.kind == "quotient-gen-cycle":
            H = set(cert.hereditary)
            if not H or not is_hereditary(sk, H):
                return False
            Q = quotient(sk, H)
            mu, nu = (_reparse(Q, p) for p in cert.paths)
            return is_generalised_cycle(Q, mu, nu)
    except KGraphError:
        return False
    return False


# -- acyclic graphs -------------------------------------------------------------

def terminal_vertices(sk: Skeleton) -> list[str]:
    """Vertices v with v Lambda = {v}: nothing has range v."""
    return [v for v in sk.vertices if not sk.edges_at[v]]


def _path_count_matrix(sk: Skeleton):
    """Entry (u, v) counts all paths from v to u in an acyclic graph.

    The vertex matrices commute and are nilpotent, so the sum over all
    degrees n of prod M_i^{n_i} factors as prod_i (I + M_i + ... + M_i^N).
    """
    N = len(sk.vertices)
    out = [[int(i == j) for j in range(N)] for i in range(N)]
    for i in range(sk.rank):
        M = vertex_matrix(sk, i + 1)
        total = [[int(a == b) for b in range(N)] for a in range(N)]
        power = total
        for _ in range(N):
            power = matmul(power, M)
            total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
        out = matmul(out, total)
    return out


def paths_into(sk: Skeleton, v: str) -> int:
    """|Lambda v| for an acyclic graph."""
    if has_conventional_cycle(sk)[0]:
        raise HasCycle("Lambda v is infinite once there is a cycle")
    P = _path_count_matrix(sk)
    col = sk.vertices.index(v)
    return sum(P[u][col] for u in range(len(sk.vertices)))


def finite_dim_decomposition(sk: Skeleton) -> list[tuple[str, int]]:
    """(v, |Lambda v|) for each terminal vertex; the algebra is the direct sum of
    the matrix algebras of these sizes."""
    cyclic, cert = has_conventional_cycle(sk)
    if cyclic:
        raise HasCycle(f"cycle {cert}")
    P = _path_count_matrix(sk)
    rows = range(len(sk.vertices))
    return [(v, sum(P[u][sk.vertices.index(v)] for u in rows)) for v in terminal_vertices(sk)]


def total_dimension(decomposition) -> int:
    return sum(d * d for _, d in decomposition)


def rho_shift(sk: Skeleton, rho: Path, mu: Path) -> Path:
    """P_rho(mu) = (rho mu)(0, d(mu))."""
    if not is_cycle(rho):
        raise NotACycle(f"{rho} is not a cycle")
    if mu.range != rho.range:
        raise NotACycle(f"r({mu}) differs from r({rho})")
    if not is_zero(meet(mu.degree, rho.degree)):
        raise DegreeOverlap(f"d({mu}) and d({rho}) overlap")
    return segment(sk, compose(sk, rho, mu), zero(sk.rank), mu.degree)


# -- initial cycles and periodicity groups --------------------------------------

@dataclass(frozen=True)
class EventuallyPeriodicPath:
    """head followed by cycle repeated forever."""
    head: Path
    cycle: Path

    def __post_init__(self):
        if not is_cycle(self.cycle) or self.cycle.range != self.head.source:
            raise NotACycle("the repeating part must be a cycle at s(head)")

    def prefix(self, sk: Skeleton, repeats: int) -> Path:
        out = self.head
        for _ in range(repeats):
            out = compose(sk, out, self.cycle)
        return out

    def _cover(self, m: Degree) -> int:
        rest = [max(0, a - b) for a, b in zip(m, self.head.degree)]
        t = 0
        for a, b in zip(rest, self.cycle.degree):
            if a and not b:
                raise ValueError(f"{m} is outside the degree of the infinite path")
            if a:
                t = max(t, -(-a // b))
        return t

    def segment(self, sk: Skeleton, m: Degree, n: Degree) -> Path:
        return segment(sk, self.prefix(sk, self._cover(n)), m, n)

    def vertex(self, sk: Skeleton, m: Degree) -> str:
        return self.segment(sk, m, m).range


def support(n: Degree) -> list[int]:
    return [i for i, x in enumerate(n) if x]


def is_initial_cycle(sk: Skeleton, mu: Path) -> bool:
    if not is_cycle(mu):
        return False
    return all(mu.degree[i] or not sk.in_edges(mu.range, i + 1) for i in range(sk.rank))


def _shift(sk: Skeleton, nu: Path, i: int) -> Path:
    """The period of sigma^{e_i} applied to nu^infinity."""
    e = unit(sk.rank, i + 1)
    return segment(sk, compose(sk, nu, nu), e, add(e, nu.degree))


@dataclass
class ShiftOrbit:
    """The finitely many shifts of mu^infinity, each recorded by its period."""
    states: list[Path]
    offsets: dict
    moves: dict          # (state, coordinate) -> state
    colours: list[int]   # coordinates in the support of d(mu)

    @property
    def vertices(self) -> frozenset:
        return frozenset(p.range for p in self.states)


def shift_orbit(sk: Skeleton, mu: Path) -> ShiftOrbit:
    colours = support(mu.degree)
    moves = {}
    offsets = {mu: zero(sk.rank)}
    queue = deque([mu])
    while queue:
        x = queue.popleft()
        for i in colours:
            y = _shift(sk, x, i)
            moves[(x, i)] = y
            if y not in offsets:
                offsets[y] = add(offsets[x], unit(sk.rank, i + 1))
                queue.append(y)
    return ShiftOrbit(sort_paths(offsets), offsets, moves, colours)


def _act(orbit: ShiftOrbit, x: Path, a) -> Path:
    """Apply a in Z^S to a state; negative steps use the inverse permutation."""
    inverse = {}
    for (s, i), t in orbit.moves.items():
        inverse[(t, i)] = s
    for i in orbit.colours:
        step = orbit.moves if a[i] >= 0 else inverse
        for _ in range(abs(a[i])):
            x = step[(x, i)]
    return x


def in_periodicity_group(orbit: ShiftOrbit, a) -> bool:
    """a lies in G_mu when some shift x has the same range vertex as a.x."""
    if any(a[i] for i in range(len(a)) if i not in orbit.colours):
        return False
    return any(_act(orbit, x, a).range == x.range for x in orbit.states)


@dataclass(frozen=True)
class PeriodicityGroup:
    basis: tuple[tuple[int, ...], ...]
    rank: int
    closed: bool

    def as_json(self) -> dict:
        return {"basis": [list(b) for b in self.basis], "rank": self.rank, "closure_verified": self.closed}


def periodicity_group(sk: Skeleton, mu: Path) -> PeriodicityGroup:
    """G_mu = {m - n : mu^infinity(m) = mu^infinity(n)} with a Hermite basis.

    The shift maps permute the finite set of shifts of mu^infinity, so the
    stabiliser of mu is generated by Schreier generators; the group adds the
    offsets between shifts sharing a range vertex.  Closure is re-verified
    by testing sums, differences and negatives of the basis vectors against
    the defining condition.
    """
    orbit = shift_orbit(sk, mu)
    gens = []
    for (x, i), y in orbit.moves.items():
        gens.append(sub_z(add(orbit.offsets[x], unit(sk.rank, i + 1)), orbit.offsets[y]))
    by_vertex = {}
    for x in orbit.states:
        by_vertex.setdefault(x.range, []).append(orbit.offsets[x])
    for offs in by_vertex.values():
        gens.extend(sub_z(o, offs[0]) for o in offs[1:])
    basis = tuple(hermite_basis(gens))
    closed = all(in_periodicity_group(orbit, b) for b in basis)
    for a in basis:
        closed = closed and in_periodicity_group(orbit, tuple(-x for x in a))
        for b in basis:
            closed = closed and in_periodicity_group(orbit, tuple(x + y for x, y in zip(a, b)))
            closed = closed and in_periodicity_group(orbit, tuple(x - y for x, y in zip(a, b)))
    return PeriodicityGroup(basis, len(basis), closed)


def sub_z(m, n) -> tuple[int, ...]:
    """Difference in Z^k (entries may be negative)."""
    return tuple(a - b for a, b in zip(m, n))


@dataclass(frozen=True)
class InitialCycle:
    mu: Path
    vertex_orbit: frozenset
    group: PeriodicityGroup

    @property
    def torus_rank(self) -> int:
        return self.group.rank

    def as_json(self) -> dict:
        return {"mu": self.mu.as_json(), "vertex_orbit": sorted(self.vertex_orbit),
                "group": self.group.as_json(), "torus_rank": self.torus_rank}


def cyclic_vertices(sk: Skeleton) -> list[str]:
    """Vertices lying on some directed cycle."""
    out = []
    for v in sk.vertices:
        seen = set()
        queue = deque(e.source for e in sk.edges_at[v])
        while queue:
            u = queue.popleft()
            if u == v:
                out.append(v)
                break
            if u in seen:
                continue
            seen.add(u)
            queue.extend(e.source for e in sk.edges_at[u])
    return out


def structure_bound(sk: Skeleton) -> Degree:
    return tuple([len(sk.vertices)] * sk.rank)


def initial_cycles(sk: Skeleton, bound: Degree | None = None) -> list[InitialCycle]:
    """One representative per class of initial cycles with equal vertex orbits,
    searched up to (|V|, ..., |V|) by default."""
    bound = tuple(bound) if bound is not None else structure_bound(sk)
    classes = {}
    for mu in cycles_upto(sk, bound, cyclic_vertices(sk)):
        if not is_initial_cycle(sk, mu):
            continue
        orbit = shift_orbit(sk, mu).vertices
        if orbit not in classes:
            classes[orbit] = mu
    out = [InitialCycle(mu, orbit, periodicity_group(sk, mu)) for orbit, mu in classes.items()]
    return sorted(out, key=lambda ic: ic.mu.sort_key())


# -- aperiodicity and structure -------------------------------------------------

APERIODIC, PERIODIC, INCONCLUSIVE = "aperiodic-witnessed", "periodic-up-to-bound", "inconclusive"


@dataclass(frozen=True)
class AperiodicityResult:
    outcome: str
    pair: tuple[Path, Path] | None = None
    pairs_checked: int = 0

    def as_json(self) -> dict:
        return {"outcome": self.outcome, "pairs_checked": self.pairs_checked,
                "unresolved_pair": [p.as_json() for p in self.pair] if self.pair else None}


def aperiodicity_test(sk: Skeleton, bound: Degree) -> AperiodicityResult:
    """For all distinct same-endpoint pairs up to `bound`, look for tau up to
    `bound` with MCE(mu tau, nu tau) empty."""
    groups = {}
    try:
        for v in sk.vertices:
            for m in box(bound):
                for p in paths_from(sk, v, m):
                    groups.setdefault((p.range, p.source), []).append(p)
        checked = 0
        for key in sorted(groups):
            members = sort_paths(groups[key])
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    checked += 1
                    if periodicity_witness(sk, (), members[a], members[b], bound) is None:
                        return AperiodicityResult(PERIODIC, (members[a], members[b]), checked)
    except LimitExceeded:
        return AperiodicityResult(INCONCLUSIVE)
    return AperiodicityResult(APERIODIC, None, checked)


def strongly_connected(sk: Skeleton) -> bool:
    """v Lambda w is non-empty for every pair of vertices."""
    for v in sk.vertices:
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for e in sk.edges_at[u]:
                if e.source not in seen:
                    seen.add(e.source)
                    queue.append(e.source)
        if len(seen) != len(sk.vertices):
            return False
    return True


@dataclass
class StructureReport:
    kind: str                     # "finite-dimensional", "infinite-projection" or "torus-sum"
    bound: Degree
    decomposition: list = field(default_factory=list)
    entrance: tuple[Path, Path] | None = None
    purely_infinite: bool | None = None
    aperiodicity: AperiodicityResult | None = None
    initial_cycles: list = field(default_factory=list)
    statement: str = ""

    def as_json(self) -> dict:
        out = {"kind": self.kind, "bound": list(self.bound), "statement": self.statement}
        if self.kind == "finite-dimensional":
            out["decomposition"] = [{"vertex": v, "dim": d} for v, d in self.decomposition]
        if self.entrance is not None:
            out["cycle_with_entrance"] = {"cycle": self.entrance[0].as_json(),
                                          "entrance": self.entrance[1].as_json()}
            out["purely_infinite"] = self.purely_infinite
            out["aperiodicity"] = self.aperiodicity.as_json() if self.aperiodicity else None
        if self.kind == "torus-sum":
            out["initial_cycles"] = [ic.as_json() for ic in self.initial_cycles]
        return out


def structure_report(sk: Skeleton, bound: Degree | None = None) -> StructureReport:
    """Finite-dimensional, purely infinite or a sum of tori, up to the search bound."""
    sk.require_accepted()
    if not is_locally_convex(sk):
        raise NotLocallyConvex("the structure report needs a locally convex graph")
    bound = tuple(bound) if bound is not None else structure_bound(sk)
    if not has_conventional_cycle(sk)[0]:
        dec = finite_dim_decomposition(sk)
        text = " + ".join(f"M_{d}" for _, d in dec)
        return StructureReport("finite-dimensional", bound, dec, statement=text)
    for rho in cycles_upto(sk, bound, cyclic_vertices(sk)):
        has, tau = cycle_has_entrance(sk, rho)
        if has:
            rep = StructureReport("infinite-projection", bound, entrance=(rho, tau))
            if strongly_connected(sk):
                rep.aperiodicity = aperiodicity_test(sk, tuple([2] * sk.rank))
                rep.purely_infinite = True if rep.aperiodicity.outcome == APERIODIC else None
            rep.statement = "purely infinite" if rep.purely_infinite else "contains an infinite projection"
            return rep
    ics = initial_cycles(sk, bound)
    text = " + ".join(f"C(T^{ic.torus_rank})" for ic in ics)
    return StructureReport("torus-sum", bound, initial_cycles=ics, statement=f"Morita equivalent to {text}")
