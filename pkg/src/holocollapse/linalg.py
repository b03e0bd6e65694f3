"""Exact dense linear algebra over Q(i).

Matrices are lists of rows of GaussianRational.  Nothing here rounds.
"""

from __future__ import annotations

from typing import List, Sequence

from .scalar import ONE, ZERO, GaussianRational

Matrix = List[List[GaussianRational]]


def as_matrix(rows) -> Matrix:
    return [[x if isinstance(x, GaussianRational) else GaussianRational(x) for x in r] for r in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def shape(m: Sequence[Sequence]) -> tuple:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    rb, cb = shape(b)
    out = zeros(len(a) * rb, (len(a[0]) if a else 0) * cb)
    for i, ra in enumerate(a):
        for j, x in enumerate(ra):
            if not x:
                continue
            for k in range(rb):
                row = out[i * rb + k]
                for l, y in enumerate(b[k]):
                    if y:
                        row[j * cb + l] = x * y
    return out


def kron_power(a: Sequence[Sequence], n: int) -> Matrix:
    out = [[ONE]]
    for _ in range(n):
        out = kron(out, a)
    return out


def equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return shape(a) == shape(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero(m: Sequence[Sequence]) -> bool:
    return not any(x for r in m for x in r)


def submatrix(m: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[m[i][j] for j in cols] for i in rows]


def _bareiss(m: Matrix) -> tuple:
    """Fraction-free elimination in place; returns (rank, sign, last pivot)."""
    rows, cols = shape(m)
    prev = ONE
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        p = m[r][c]
        for i in range(r + 1, rows):
            mi = m[i]
            f = mi[c]
            for j in range(c + 1, cols):
                v = p * mi[j]
                if f and m[r][j]:
                    v = v - f * m[r][j]
                mi[j] = v / prev if v else ZERO
            mi[c] = ZERO
        prev = p
        r += 1
    return r, sign, prev


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    work = [list(r) for r in m]
    if len(work) > len(work[0]):
        work = transpose(work)
    return _bareiss(work)[0]


def det(m: Sequence[Sequence]) -> GaussianRational:
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    work = [list(r) for r in m]
    r, sign, last = _bareiss(work)
    if r < n:
        return ZERO
    return last if sign > 0 else -last


def rref(m: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form and pivot columns."""
    work = [list(r) for r in m]
    rows, cols = shape(work)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c].inverse()
        work[r] = [x * inv if x else ZERO for x in work[r]]
        for i in range(rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y if y else x for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return work, pivots


def inverse(m: Sequence[Sequence]) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Sequence[Sequence], b: Sequence[Sequence]):
    """A particular solution X of A X = B, or None when inconsistent."""
    rows, cols = shape(a)
    k = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    red, piv = rref(aug)
    if any(p >= cols for p in piv):
        return None
    x = zeros(cols, k)
    for r, p in enumerate(piv):
        x[p] = red[r][cols:]
    return x


def nullspace(m: Sequence[Sequence]) -> Matrix:
    """Basis of the right kernel, one vector per free column."""
    rows, cols = shape(m)
    red, piv = rref(m)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for r, p in enumerate(piv):
            if red[r][f]:
                v[p] = -red[r][f]
        basis.append(v)
    return basis
