"""Exact linear algebra over Q and Z: nullspaces, Smith and Hermite forms, feasibility."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list]


def copy(A) -> Matrix:
    return [list(row) for row in A]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A, cols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(A))]


def rref(A) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q with the pivot columns."""
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        lead = M[r][c]
        M[r] = [x / lead for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A) -> int:
    return len(rref(A)[1]) if A and A[0] else 0


def nullspace(A, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : Ax = 0} over Q, one vector per free column."""
    n = len(A[0]) if A else (cols or 0)
    if not A:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


# -- integer forms ------------------------------------------------------------

def smith_normal_form(A, rows: int | None = None, cols: int | None = None):
    """Return (D, U, V) with U A V = D diagonal, U and V unimodular, and
    each diagonal entry dividing the next."""
    m = len(A) if A else (rows or 0)
    n = len(A[0]) if A else (cols or 0)
    D = [[int(x) for x in row] for row in A] if A else [[0] * n for _ in range(m)]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if not done:
                # a remainder is smaller than the pivot: bring it forward and retry
                rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def invariant_factors(A, rows: int | None = None, cols: int | None = None) -> list[int]:
    D, _, _ = smith_normal_form(A, rows, cols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def integer_rank(A) -> int:
    return len(invariant_factors(A)) if A and A[0] else 0


def hermite_basis(vectors) -> list[tuple[int, ...]]:
    """Row-style Hermite basis of the lattice spanned by integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    basis = []
    for col in range(n):
        while True:
            live = [r for r in rows if r[col]]
            if len(live) <= 1:
                break
            p = min(live, key=lambda r: abs(r[col]))
            for r in live:
                if r is not p:
                    q = r[col] // p[col]
                    r[:] = [a - q * b for a, b in zip(r, p)]
        live = [r for r in rows if r[col]]
        if live:
            p = live[0]
            rows = [r for r in rows if r is not p and any(r)]
            basis.append([-x for x in p] if p[col] < 0 else p)
    # reduce entries above each pivot
    for i, b in enumerate(basis):
        c = next(j for j, x in enumerate(b) if x)
        for k in range(i):
            q = basis[k][c] // b[c]
            basis[k] = [a - q * x for a, x in zip(basis[k], b)]
    return [tuple(b) for b in basis]


def in_lattice(basis, v) -> bool:
    """Membership of v in the lattice with the given Hermite basis."""
    rest = list(v)
    for b in basis:
        c = next(j for j, x in enumerate(b) if x)
        if rest[c] % b[c]:
            return False
        q = rest[c] // b[c]
        rest = [a - q * x for a, x in zip(rest, b)]
    return not any(rest)


# -- feasibility --------------------------------------------------------------

def positive_solution(A, n: int) -> list[Fraction] | None:
    """Some x with A x = 0 and every x_i >= 1, or None (exact two-phase test, Bland's rule).

    Substituting x = 1 + y with y >= 0 turns this into A y = -A 1, y >= 0;
    phase one minimises the artificial variables.
    """
    A = [[Fraction(x) for x in row] for row in A if any(row)]
    if not A:
        return [Fraction(1)] * n
    b = [-sum(row) for row in A]
    for i, row in enumerate(A):
        if b[i] < 0:
            A[i] = [-x for x in row]
            b[i] = -b[i]
    m = len(A)
    # tableau columns: y (n), artificials (m), rhs
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    while True:
        # reduced costs of the phase-one objective (sum of artificials)
        cost = [Fraction(0)] * width
        for j in range(width):
            c = Fraction(int(j >= n))
            z = sum((Fraction(int(basis[i] >= n)) * T[i][j] for i in range(m)), Fraction(0))
            cost[j] = c - z
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        ratios = [(T[i][-1] / T[i][entering], basis[i], i) for i in range(m) if T[i][entering] > 0]
        if not ratios:
            break
        _, _, r = min(ratios)
        piv = T[r][entering]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        basis[r] = entering
    if any(basis[i] >= n and T[i][-1] != 0 for i in range(m)):
        return None
    y = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            y[j] = T[i][-1]
    return [1 + v for v in y]
