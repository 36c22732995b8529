"""Integer boundary matrices with the sorted-vertex sign convention."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex_core import EMPTY, ComplexPair, Face, SimplicialComplex
from .errors import DomainError


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense matrix of Python ints with face labels on rows and columns."""

    entries: tuple[tuple[int, ...], ...]
    row_labels: tuple[Face, ...]
    col_labels: tuple[Face, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.row_labels):
            raise DomainError("row count does not match row labels")
        if any(len(row) != len(self.col_labels) for row in self.entries):
            raise DomainError("column count does not match column labels")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], row_labels: Sequence[Face],
                  col_labels: Sequence[Face]) -> "IntegerMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows), tuple(row_labels), tuple(col_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntegerMatrix":
        cols = tuple(zip(*self.entries)) if self.entries else tuple(() for _ in self.col_labels)
        return IntegerMatrix(cols, self.col_labels, self.row_labels)

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape[1] != other.shape[0]:
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        other_cols = list(zip(*other.entries)) if other.entries else [()] * other.shape[1]
        rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in other_cols) for r in self.entries)
        return IntegerMatrix(rows, self.row_labels, other.col_labels)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} + {other.shape}")
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        return IntegerMatrix(rows, self.row_labels, self.col_labels)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.entries[i][j] == self.entries[j][i]
                              for i in range(n) for j in range(i + 1, n))

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=float).reshape(self.shape)

    def to_text(self) -> str:
        lines = [f"{self.shape[0]} {self.shape[1]}"]
        lines += [" ".join(str(x) for x in row) for row in self.entries]
        lines.append("R " + " ".join(_face_token(f) for f in self.row_labels))
        lines.append("C " + " ".join(_face_token(f) for f in self.col_labels))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntegerMatrix":
        lines = text.splitlines()
        n, m = (int(t) for t in lines[0].split())
        rows = [tuple(int(t) for t in lines[1 + i].split()) for i in range(n)]
        rlabels = tuple(_parse_face_token(t) for t in lines[1 + n].split()[1:])
        clabels = tuple(_parse_face_token(t) for t in lines[2 + n].split()[1:])
        if len(clabels) != m:
            raise DomainError("column label count does not match header")
        return cls(tuple(rows), rlabels, clabels)


def _face_token(f: Face) -> str:
    return ",".join(map(str, f)) if f else "-"


def _parse_face_token(t: str) -> Face:
    return EMPTY if t == "-" else tuple(int(x) for x in t.split(","))


def sign(eta: Face, sigma: Face) -> int:
    """``(-1)^i`` where ``eta`` is ``sigma`` with its i-th vertex removed."""
    if len(eta) != len(sigma) - 1:
        raise DomainError(f"{eta} is not a codimension-one face of {sigma}")
    for i, v in enumerate(sigma):
        if v not in eta:
            if sigma[:i] + sigma[i + 1:] != tuple(eta):
                break
            return -1 if i % 2 else 1
    raise DomainError(f"{eta} is not a codimension-one face of {sigma}")


def epsilon(sigma: Face, tau: Face) -> int:
    """Number of shared vertices strictly between the two non-shared ones."""
    s, t = set(sigma), set(tau)
    if len(sigma) != len(tau) or len(s & t) != len(sigma) - 1:
        raise DomainError(f"{sigma} and {tau} do not differ in exactly one vertex")
    u, v = sorted(s ^ t)
    return sum(1 for w in s & t if u < w < v)


def _incidence(rows: Sequence[Face], cols: Sequence[Face]) -> IntegerMatrix:
    index = {f: i for i, f in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, sigma in enumerate(cols):
        for i in range(len(sigma)):
            eta = sigma[:i] + sigma[i + 1:]
            r = index.get(eta)
            if r is not None:
                M[r][j] = -1 if i % 2 else 1
    return IntegerMatrix.from_rows(M, rows, cols)


def boundary_matrix(X: SimplicialComplex, k: int) -> IntegerMatrix:
    """``∂_k(X)``: rows ``X_{k-1}`` (the row ∅ when k = 0), columns ``X_k``.

    ``k = dim X + 1`` is allowed and gives a matrix with no columns.
    """
    if k < 0 or k > X.dim + 1:
        raise DomainError(f"k={k} outside 0..{X.dim + 1}")
    return _incidence(X.faces(k - 1), X.faces(k))


def chain_basis(pair: ComplexPair, j: int, augmented: bool = False) -> tuple[Face, ...]:
    """Basis faces of ``C_j(X, A)``.

    The relative group ``C_{-1}`` is zero; ``augmented=True`` instead keeps
    ``∅`` there, which gives reduced homology when ``A`` has no vertices.
    """
    if j >= 0:
        return pair.rel_faces(j)
    if j == -1 and augmented:
        return (EMPTY,)
    return ()


def pair_boundary(pair: ComplexPair, k: int, augmented: bool = False) -> IntegerMatrix:
    """Relative boundary ``C_k(X,A) -> C_{k-1}(X,A)`` for any integer ``k``."""
    if augmented and pair.subcomplex.f(0) > 0:
        raise DomainError("augmented chains need a subcomplex without vertices")
    return _incidence(chain_basis(pair, k - 1, augmented), chain_basis(pair, k, augmented))


def relative_boundary_matrix(pair: ComplexPair, k: int) -> IntegerMatrix:
    """``∂_k(X,A)``: rows ``X_{k-1} \\ A_{k-1}``, columns ``X_k \\ A_k``."""
    if k < 0 or k > pair.dim + 1:
        raise DomainError(f"k={k} outside 0..{pair.dim + 1}")
    return pair_boundary(pair, k)


def submatrix(X: SimplicialComplex, k: int, B: Iterable[Face], C: Iterable[Face]) -> IntegerMatrix:
    """Square block ``∂_k[B, C]`` with rows ``C`` and columns ``B``."""
    B, C = sorted(B), sorted(C)
    if len(B) != len(C):
        raise DomainError(f"|B|={len(B)} differs from |C|={len(C)}")
    if any(len(b) != k + 1 or b not in X for b in B):
        raise DomainError(f"B must be a set of {k}-faces of X")
    if any(len(c) != k or c not in X for c in C):
        raise DomainError(f"C must be a set of {k - 1}-faces of X")
    return _incidence(C, B)
