"""K-groups of rank 1 and rank 2 graph algebras from the vertex matrices.

Both groups come out of the chain complex

    Z^{R12} --d2--> Z^{R1} + Z^{R2} --d1--> Z^{V}

where R_i is the set of vertices receiving colour-i edges and R12 = R1 & R2.
For graphs without sources these are the full vertex set and the maps are
the familiar block matrices d1 = (1 - M1^t, 1 - M2^t) and
d2 = (M2^t - 1 ; 1 - M1^t).  Then K0 = coker d1 + ker d2 and
K1 = ker d1 / im d2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Skeleton, is_locally_convex, vertex_matrix
from .errors import KGraphError, NotLocallyConvex, UnsupportedRank
from .linalg import invariant_factors


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank plus the cyclic torsion summands Z/t (each t > 1, in divisibility order)."""
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion), "text": str(self)}


def cokernel(A, rows: int) -> AbelianGroup:
    """Z^rows / (column span of A); A is given as a list of rows."""
    if rows == 0:
        return AbelianGroup(0)
    if not A or not A[0]:
        return AbelianGroup(rows)
    factors = invariant_factors(A)
    return AbelianGroup(rows - len(factors), tuple(f for f in factors if f != 1))


def kernel_rank(A, cols: int) -> int:
    if cols == 0:
        return 0
    if not A:
        return cols
    return cols - len(invariant_factors(A))


def _one_minus_transpose(sk: Skeleton, colour: int, cols: list[str]) -> list[list[int]]:
    """Columns v of (1 - M^t) for v in `cols`, rows over all vertices."""
    M = vertex_matrix(sk, colour)
    index = {v: i for i, v in enumerate(sk.vertices)}
    out = []
    for w in sk.vertices:
        row = []
        for v in cols:
            row.append(int(v == w) - M[index[v]][index[w]])
        out.append(row)
    return out


def receivers(sk: Skeleton, colour: int) -> list[str]:
    return [v for v in sk.vertices if sk.in_edges(v, colour)]


@dataclass(frozen=True)
class KGroups:
    k0: AbelianGroup
    k1: AbelianGroup
    generators_from_vertices: bool

    def as_json(self) -> dict:
        return {"K0": self.k0.as_json(), "K1": self.k1.as_json(),
                "K0_generated_by_vertex_classes": self.generators_from_vertices}


def boundary_maps(sk: Skeleton):
    """(d1, d2, row counts) for the restricted rank-2 complex; matrices are lists of rows."""
    if sk.rank != 2:
        raise UnsupportedRank("the block complex is only used for rank 2")
    if not is_locally_convex(sk):
        raise NotLocallyConvex("K-groups need a locally convex graph")
    R1, R2 = receivers(sk, 1), receivers(sk, 2)
    R12 = [v for v in R1 if v in set(R2)]
    n = len(sk.vertices)
    left = _one_minus_transpose(sk, 1, R1)
    right = _one_minus_transpose(sk, 2, R2)
    d1 = [a + b for a, b in zip(left, right)]
    M1, M2 = vertex_matrix(sk, 1), vertex_matrix(sk, 2)
    index = {v: i for i, v in enumerate(sk.vertices)}
    d2 = []
    for w in R1:  # (M2^t - 1) restricted to R1 rows
        d2.append([M2[index[v]][index[w]] - int(v == w) for v in R12])
    for w in R2:  # (1 - M1^t) restricted to R2 rows
        d2.append([int(v == w) - M1[index[v]][index[w]] for v in R12])
    return d1, d2, (n, len(R1) + len(R2), len(R12))


def kgroups(sk: Skeleton) -> KGroups:
    if sk.rank == 1:
        R = receivers(sk, 1)
        A = _one_minus_transpose(sk, 1, R)
        k0 = cokernel(A, len(sk.vertices))
        k1 = AbelianGroup(kernel_rank(A, len(R)))
        return KGroups(k0, k1, True)
    if sk.rank != 2:
        raise UnsupportedRank(f"K-groups are computed for rank 1 and 2 only, not {sk.rank}")
    d1, d2, (n0, n1, n2) = boundary_maps(sk)
    coker1 = cokernel(d1, n0)
    ker2 = kernel_rank(d2, n2)
    k0 = AbelianGroup(coker1.rank + ker2, coker1.torsion)
    rank2 = n2 - ker2
    coker2 = cokernel(d2, n1)
    k1 = AbelianGroup(kernel_rank(d1, n1) - rank2, coker2.torsion)
    return KGroups(k0, k1, ker2 == 0)


def coordinate_graph_acyclic(sk: Skeleton, colour: int) -> bool:
    """True when the colour-i edges alone contain no directed cycle."""
    succ = {v: [e.source for e in sk.in_edges(v, colour)] for v in sk.vertices}
    state = {}

    def visit(v):
        stack = [(v, iter(succ[v]))]
        state[v] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[u] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
        return True

    return all(visit(v) for v in sk.vertices if v not in state)


def block_column(sk: Skeleton) -> list[list[int]]:
    """The unrestricted block column (M2^t - 1 ; 1 - M1^t) as a list of rows."""
    M1, M2 = vertex_matrix(sk, 1), vertex_matrix(sk, 2)
    n = len(sk.vertices)
    top = [[M2[j][i] - int(i == j) for j in range(n)] for i in range(n)]
    bottom = [[int(i == j) - M1[j][i] for j in range(n)] for i in range(n)]
    return top + bottom


def vertex_class_criterion(sk: Skeleton) -> bool:
    """Some coordinate graph is acyclic, so the block column is injective and
    K0 is generated by vertex classes.  The injectivity is re-checked by SNF."""
    if sk.rank != 2:
        raise UnsupportedRank("the vertex-class criterion is stated for rank 2")
    verdict = coordinate_graph_acyclic(sk, 1) or coordinate_graph_acyclic(sk, 2)
    if verdict:
        n = len(sk.vertices)
        if kernel_rank(block_column(sk), n) != 0:
            raise KGraphError("block column has a kernel although a coordinate graph is acyclic")
    return verdict

