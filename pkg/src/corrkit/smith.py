"""Smith normal form over the integers, self-verifying.

`smith_normal_form(m)` returns `(u, s, v)` with `u @ m @ v == s`,
`u` and `v` unimodular, and `s` diagonal with each diagonal entry
dividing the next.  The factorization is re-verified on every call
(product identity, determinant +-1, divisibility); a failure raises,
it is never returned.
"""
from __future__ import annotations

from fractions import Fraction

from .exactlinalg import det, mat_mul

Matrix = list  # list of list of int


def _clone(m) -> Matrix:
    return [list(map(int, row)) for row in m]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m) -> tuple[Matrix, Matrix, Matrix]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    s = _clone(m) if rows else []
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        s[dst] = [a + c * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + c * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        s[i] = [-a for a in s[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a pivot with minimal absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # clear row and column t; restart if a remainder creates a smaller pivot
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        if s[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d_k | d_{k+1}
    changed = True
    while changed:
        changed = False
        for k in range(t - 1):
            a, b = s[k][k], s[k + 1][k + 1]
            if a != 0 and b % a != 0:
                # fold entry b into position (k,k) and redistribute
                add_col(k, k + 1, 1)
                dirty = True
                while dirty:
                    dirty = False
                    q = s[k + 1][k] // s[k][k]
                    add_row(k + 1, k, -q)
                    if s[k + 1][k] != 0:
                        swap_rows(k, k + 1)
                        dirty = True
                q = s[k][k + 1] // s[k][k]
                add_col(k + 1, k, -q)
                if s[k][k + 1] != 0:
                    raise AssertionError("internal: divisibility fix left off-diagonal entry")
                if s[k][k] < 0:
                    negate_row(k)
                if s[k + 1][k + 1] < 0:
                    negate_row(k + 1)
                changed = True

    _verify(m, u, s, v)
    return u, s, v


def _verify(m, u, s, v) -> None:
    rows = len(s)
    cols = len(s[0]) if rows else 0
    for i in range(rows):
        for j in range(cols):
            if i != j and s[i][j] != 0:
                raise AssertionError("SNF verification: result not diagonal")
    diag = [s[i][i] for i in range(min(rows, cols))]
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            raise AssertionError("SNF verification: zero before nonzero on diagonal")
        if a != 0 and b % a != 0:
            raise AssertionError("SNF verification: divisibility chain broken")
        if a < 0 or b < 0:
            raise AssertionError("SNF verification: negative diagonal entry")
    if rows and abs(det(u)) != 1:
        raise AssertionError("SNF verification: U not unimodular")
    if cols and abs(det(v)) != 1:
        raise AssertionError("SNF verification: V not unimodular")
    if rows and cols:
        prod = mat_mul(mat_mul(u, m), v)
        for i in range(rows):
            for j in range(cols):
                if prod[i][j] != s[i][j]:
                    raise AssertionError("SNF verification: U*M*V != S")


def invariant_factors(m) -> list[int]:
    _, s, _ = smith_normal_form(m)
    n = min(len(s), len(s[0]) if s else 0)
    return [s[i][i] for i in range(n) if s[i][i] != 0]


def integer_solve(m, b: list[int]) -> list[int] | None:
    """One integer solution x of M x = b, or None.

    Uses U M V = S: solve S z = U b entrywise, then x = V z.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    u, s, v = smith_normal_form(m)
    ub = [sum(u[i][k] * b[k] for k in range(rows)) for i in range(rows)]
    z = [0] * cols
    for i in range(rows):
        d = s[i][i] if i < cols else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            z[i] = ub[i] // d
    x = [sum(v[i][k] * z[k] for k in range(cols)) for i in range(cols)]
    # verify
    for i in range(rows):
        if sum(m[i][k] * x[k] for k in range(cols)) != b[i]:
            raise AssertionError("internal: integer_solve verification failed")
    return x
