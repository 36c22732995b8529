"""Exact integer linear algebra on lists of Python ints.

Everything here works on plain ``list[list[int]]`` so that arbitrary
precision is automatic.  Bareiss elimination keeps intermediate entries
integral; Berkowitz gives the characteristic polynomial without division.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _copy(M: Matrix) -> list[list[int]]:
    return [list(map(int, row)) for row in M]


def _ncols(M: Matrix) -> int:
    return len(M[0]) if M else 0


def rank(M: Matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    A = _copy(M)
    n_rows, n_cols = len(A), _ncols(A)
    r = 0
    prev = 1
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, n_rows):
            a = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def det(M: Matrix) -> int:
    """Determinant of a square integer matrix; the 0x0 determinant is 1."""
    A = _copy(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("det needs a square matrix")
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        for i in range(c + 1, n):
            a = A[i][c]
            row_i, row_c = A[i], A[c]
            for j in range(c + 1, n):
                row_i[j] = (p * row_i[j] - a * row_c[j]) // prev
            row_i[c] = 0
        prev = p
    return sign * A[n - 1][n - 1] if n else 1


def charpoly(M: Matrix) -> list[int]:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(yI - M)``, highest degree first.

    Berkowitz's algorithm: only ring operations, so the result is exact.
    """
    A = _copy(M)
    n = len(A)
    poly = [1]
    for r in range(n):
        # leading principal (r+1)x(r+1) block: a = A[r][r], R = A[r][:r], S = A[:r][r], B = A[:r][:r]
        a = A[r][r]
        R = A[r][:r]
        S = [A[i][r] for i in range(r)]
        # Toeplitz column: [1, -a, -R S, -R B S, ..., -R B^{r-1} S]
        col = [1, -a]
        v = S
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(A[i][j] * v[j] for j in range(r)) for i in range(r)]
        new = [0] * (r + 2)
        for i in range(r + 2):
            new[i] = sum(col[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(col))
        poly = new
    return poly


def matmul(A: Matrix, B: Matrix) -> list[list[int]]:
    inner = len(B)
    cols = _ncols(B)
    if A and len(A[0]) != inner:
        raise ValueError("shape mismatch in matmul")
    Bt = [[B[i][j] for i in range(inner)] for j in range(cols)]
    return [[sum(x * y for x, y in zip(row, bc)) for bc in Bt] for row in A]


def kernel_vector(M: Matrix, n_cols: int | None = None) -> list[Fraction] | None:
    """A nonzero rational vector ``x`` with ``M x = 0``, or None if the kernel is trivial.

    ``n_cols`` is only needed when ``M`` has no rows.
    """
    if n_cols is None:
        n_cols = _ncols(M)
    if not M:
        return [Fraction(1)] + [Fraction(0)] * (n_cols - 1) if n_cols else None
    A = [[Fraction(x) for x in row] for row in M]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = next((c for c in range(n_cols) if c not in pivots), None)
    if free is None:
        return None
    x = [Fraction(0)] * n_cols
    x[free] = Fraction(1)
    for i, c in enumerate(pivots):
        x[c] = -A[i][free]
    return x
