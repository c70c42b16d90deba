"""Exact linear algebra over rationals.

Everything here works with `fractions.Fraction` and plain lists/dicts;
there is no floating point anywhere.  Two views are provided: dense
matrices (lists of rows) for solving and nullspaces, and sparse vectors
(dicts keyed by arbitrary hashable symbols) with an incremental span
solver used for module and ideal membership questions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

Vec = dict  # sparse vector: hashable key -> Fraction (zeros omitted)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------- sparse vecs


def vclean(v: Vec) -> Vec:
    return {k: c for k, c in v.items() if c != 0}


def vadd(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for k, c in v.items():
        nc = out.get(k, Fraction(0)) + c
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out

def vsub(u: Vec, v: Vec) -> Vec:
    return vadd(u, vscale(Fraction(-1), v))


def vscale(c, v: Vec) -> Vec:
    c = frac(c)
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


def vdot_keys(u: Vec, v: Vec) -> bool:
    """True when the supports intersect."""
    small, big = (u, v) if len(u) <= len(v) else (v, u)
    return any(k in big for k in small)


def sort_key(x: Any):
    """Total order over the mixed key types used in this package
    (strings, ints, tuples thereof, recursively)."""
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    if isinstance(x, int):
        return (0, x)
    return (1, str(x))


def vec_repr(v: Vec, zero: str = "0") -> str:
    if not v:
        return zero
    parts = []
    for k in sorted(v, key=sort_key):
        c = v[k]
        name = k if isinstance(k, str) else str(k)
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{c}*{name}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class SpanSolver:
    """Incremental exact row reduction over sparse vectors.

    Keys are discovered as vectors arrive and are assigned column
    positions in first-seen order, so behaviour is deterministic for a
    deterministic insertion sequence.
    """

    def __init__(self, vectors: Iterable[Vec] = ()):  # optional bulk init
        self._cols: dict[Hashable, int] = {}
        self._rows: list[dict[int, Fraction]] = []
        self._pivot_of_row: list[int] = []
        self._row_of_pivot: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _encode(self, vec: Vec, register: bool) -> dict[int, Fraction] | None:
        enc: dict[int, Fraction] = {}
        for k, c in vec.items():
            c = frac(c)
            if c == 0:
                continue
            idx = self._cols.get(k)
            if idx is None:
                if not register:
                    return None  # unseen key: cannot be in the span
                idx = len(self._cols)
                self._cols[k] = idx
            enc[idx] = c
        return enc

    def _reduce(self, enc: dict[int, Fraction]) -> tuple[dict[int, Fraction], int | None]:
        while enc:
            p = min(enc)
            row_i = self._row_of_pivot.get(p)
            if row_i is None:
                return enc, p
            c = enc[p]
            for j, v in self._rows[row_i].items():
                nv = enc.get(j, Fraction(0)) - c * v
                if nv:
                    enc[j] = nv
                else:
                    enc.pop(j, None)
        return enc, None

    def add(self, vec: Vec) -> bool:
        """Add a vector to the span; True if the dimension grew."""
        enc = self._encode(vec, register=True)
        enc, p = self._reduce(enc)
        if p is None:
            return False
        c = enc[p]
        row = {j: v / c for j, v in enc.items()}
        self._row_of_pivot[p] = len(self._rows)
        self._rows.append(row)
        self._pivot_of_row.append(p)
        return True

    def contains(self, vec: Vec) -> bool:
        enc = self._encode(vec, register=False)
        if enc is None:
            return False
        _, p = self._reduce(enc)
        return p is None


def same_span(vs: Sequence[Vec], ws: Sequence[Vec]) -> bool:
    a = SpanSolver(vs)
    b = SpanSolver(ws)
    return all(a.contains(w) for w in ws) and all(b.contains(v) for v in vs)


# ------------------------------------------------------------- dense matrices


def identity_matrix(n: int) -> list[list[Fraction]]:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = frac(ai[t])
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] += c * frac(bt[j])
    return out


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [[frac(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One exact solution of A x = b (free variables set to 0), or None."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [[frac(x) for x in row] + [frac(b[i])] for i, row in enumerate(a)]
    if nrows == 0:
        return [Fraction(0)] * ncols if all(frac(x) == 0 for x in b) else None
    red, pivots = rref(aug)
    if ncols in pivots:
        return None  # inconsistent: pivot in the rhs column
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    # verify (cheap insurance against indexing slips)
    for i in range(nrows):
        s = sum((frac(a[i][j]) * x[j] for j in range(ncols)), Fraction(0))
        if s != frac(b[i]):
            raise AssertionError("internal: solve() verification failed")
    return x


def nullspace(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right nullspace of A, deterministic order."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [[Fraction(1) if i == j else Fraction(0) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def express(target: Vec, gens: Sequence[Vec]) -> list[Fraction] | None:
    """Coefficients c with sum c_i * gens[i] == target, or None."""
    keys: list[Hashable] = []
    seen = set()
    for v in list(gens) + [target]:
        for k in v:
            if k not in seen:
                seen.add(k)
                keys.append(k)
    a = [[frac(g.get(k, 0)) for g in gens] for k in keys]
    b = [frac(target.get(k, 0)) for k in keys]
    return solve(a, b)


def is_psd(g: Sequence[Sequence]) -> bool:
    """Exact positive-semidefiniteness of a symmetric rational matrix.

    Pivoted LDL^T: repeatedly pick a positive diagonal entry and
    eliminate; the matrix is PSD iff whenever all diagonal entries are
    zero the remainder is the zero matrix (a PSD matrix with zero
    diagonal entry has a zero row).
    """
    n = len(g)
    m = [[frac(x) for x in row] for row in g]
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] > 0), None)
        if piv is None:
            # all diagonal entries <= 0; need diag exactly 0 and rows 0
            for i in active:
                if m[i][i] != 0:
                    return False
                if any(m[i][j] != 0 for j in active):
                    return False
            return True
        active.remove(piv)
        d = m[piv][piv]
        for i in active:
            f = m[i][piv] / d
            if f == 0:
                continue
            for j in active:
                m[i][j] -= f * m[piv][j]
    return True


def det(a: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free elimination (exact)."""
    n = len(a)
    m = [[frac(x) for x in row] for row in a]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        out *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return sign * out
