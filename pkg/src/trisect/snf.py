"""Smith normal form over the integers with transform tracking.

Pure-integer computation: returns D = U*M*V with U, V unimodular and the
diagonal of D satisfying d1 | d2 | ... ; the factorization is re-verified
on every call.
"""

from __future__ import annotations


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(A, B):
    n, k, m2 = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m2 for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m2):
                    row[j] += a * Bt[j]
    return out


def _det_unimodular(M):
    # integer determinant by fraction-free Gaussian elimination (Bareiss)
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def smith_normal_form(M):
    """(diagonal, U, V, D) with U*M*V = D and d1 | d2 | ...

    ``M`` is a list of integer rows (possibly empty / non-square).
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [list(map(int, row)) for row in M]
    U = _identity(rows)
    V = _identity(cols)

    def row_op(i, j, k):
        for t in range(cols):
            A[i][t] += k * A[j][t]
        for t in range(rows):
            U[i][t] += k * U[j][t]

    def col_op(i, j, k):
        for t in range(rows):
            A[t][i] += k * A[t][j]
        for t in range(cols):
            V[t][i] += k * V[t][j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for t in range(rows):
            A[t][i], A[t][j] = A[t][j], A[t][i]
        for t in range(cols):
            V[t][i], V[t][j] = V[t][j], V[t][i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    s = 0
    while s < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        piv = None
        for i in range(s, rows):
            for j in range(s, cols):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        if i != s:
            row_swap(s, i)
        if j != s:
            col_swap(s, j)
        if A[s][s] < 0:
            row_neg(s)
        dirty = False
        for i in range(s + 1, rows):
            if A[i][s]:
                q = A[i][s] // A[s][s]
                row_op(i, s, -q)
                if A[i][s]:
                    dirty = True
        for j in range(s + 1, cols):
            if A[s][j]:
                q = A[s][j] // A[s][s]
                col_op(j, s, -q)
                if A[s][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block
        bad = None
        for i in range(s + 1, rows):
            for j in range(s + 1, cols):
                if A[i][j] % A[s][s]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(s, bad, 1)
            continue
        s += 1

    D = A
    diag = [D[i][i] for i in range(min(rows, cols))]
    # verify the factorization
    UM = _matmul(U, M) if rows else []
    UMV = _matmul(UM, V) if rows and cols else ([[]] * rows if rows else [])
    if rows and cols:
        assert UMV == D, "SNF transform verification failed"
    assert abs(_det_unimodular(U)) == 1, "U not unimodular"
    assert abs(_det_unimodular(V)) == 1, "V not unimodular"
    for k in range(len(diag) - 1):
        if diag[k]:
            assert diag[k + 1] % diag[k] == 0, "divisibility chain broken"
        else:
            assert diag[k + 1] == 0, "zero ordering broken"
    return diag, U, V, D


def cokernel_invariants(M):
    """Invariant factors of Z^cols / rowspan(M): (torsion list, free rank)."""
    if not M:
        return [], 0
    diag, *_ = smith_normal_form(M)
    cols = len(M[0])
    torsion = [d for d in diag if d not in (0, 1)]
    rank = sum(1 for d in diag if d)
    free = cols - rank
    return torsion, free
