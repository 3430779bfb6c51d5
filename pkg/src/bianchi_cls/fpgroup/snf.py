"""Smith normal form over the integers."""

from __future__ import annotations

import math
from typing import Sequence


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]], transforms: bool = False):
    """Invariant factors d1 | d2 | ... of an integer matrix (nonzero ones only).

    With ``transforms=True`` returns ``(factors, D, U, V)`` where U, V are
    unimodular and ``U * M * V = D`` is diagonal.  Pivots are entries of least
    absolute value; rows and columns are cleared by Euclidean division.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in A:
            row[dst] += k * row[src]
        if V is not None:
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # least nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if done:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remainder in row/column t to the pivot
            i_best = min((i for i in range(t, m) if A[i][t]), key=lambda i: abs(A[i][t]))
            j_best = min((j for j in range(t, n) if A[t][j]), key=lambda j: abs(A[t][j]))
            if abs(A[i_best][t]) <= abs(A[t][j_best]):
                swap_rows(t, i_best)
            else:
                swap_cols(t, j_best)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    factors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    if transforms:
        return factors, A, U, V
    return factors


def determinantal_divisors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """gcd of all k x k minors for k = 1, 2, ... (brute force; small matrices only)."""
    from itertools import combinations

    A = [list(row) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = math.gcd(g, _det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def _det(M: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1
