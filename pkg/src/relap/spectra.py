"""Relative Laplacians, their spectra, and the rank bookkeeping around them.

Every Laplacian is built twice: as a product of relative boundary matrices
and entry by entry from the combinatorial description (degrees, shared
faces, the ε sign).  The two must agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np

from . import exact
from .chains import IntegerMatrix, epsilon, relative_boundary_matrix
from .complex_core import ComplexPair, cofaces
from .errors import DomainError, InvariantViolation
from .homology import betti, boundary_rank

Kind = Literal["full", "up_down", "down_up"]
KINDS: tuple[str, ...] = ("full", "up_down", "down_up")
_ALIASES = {"ud": "up_down", "du": "down_up", "full": "full", "up_down": "up_down", "down_up": "down_up"}

ZERO_REL = 1e-8


@dataclass(frozen=True)
class LaplacianPart:
    kind: str
    k: int
    matrix: IntegerMatrix
    pair: ComplexPair = field(repr=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[float, ...]
    exact_rank: int
    pseudo_det: int
    zero_multiplicity: int
    tau_zero: float
    charpoly: tuple[int, ...]

    @property
    def smallest(self) -> float:
        return self.eigenvalues[0] if self.eigenvalues else math.inf

    @property
    def largest(self) -> float:
        return self.eigenvalues[-1] if self.eigenvalues else 0.0

    def nonzero(self) -> list[float]:
        return [x for x in self.eigenvalues if abs(x) >= self.tau_zero]


def _check_k(pair: ComplexPair, k: int) -> None:
    if k < 0 or k > max(pair.dim, 0):
        raise DomainError(f"k={k} outside 0..{max(pair.dim, 0)}")


def _product_form(pair: ComplexPair, k: int, kind: str) -> IntegerMatrix:
    up = relative_boundary_matrix(pair, k + 1)
    down = relative_boundary_matrix(pair, k)
    ud = up @ up.T
    du = down.T @ down
    if kind == "up_down":
        return ud
    if kind == "down_up":
        return du
    return ud + du


def _closed_form(pair: ComplexPair, k: int, kind: str) -> IntegerMatrix:
    X, A = pair.complex, pair.subcomplex
    faces = pair.rel_faces(k)
    n = len(faces)
    M = [[0] * n for _ in range(n)]
    want_ud = kind in ("up_down", "full")
    want_du = kind in ("down_up", "full")
    for i, s in enumerate(faces):
        if want_ud:
            M[i][i] += len(cofaces(X, s))
        if want_du:
            M[i][i] += sum(1 for j in range(len(s)) if s[:j] + s[j + 1:] not in A)
        for j in range(i + 1, n):
            t = faces[j]
            shared = tuple(sorted(set(s) & set(t)))
            if len(shared) != k:
                continue
            sign = -1 if epsilon(s, t) % 2 else 1
            union = tuple(sorted(set(s) | set(t)))
            val = 0
            if want_ud and union in X:
                val -= sign
            if want_du and shared not in A:
                val += sign
            M[i][j] = M[j][i] = val
    return IntegerMatrix.from_rows(M, faces, faces)


@lru_cache(maxsize=2048)
def laplacian(pair: ComplexPair, k: int, kind: str = "full") -> LaplacianPart:
    """``L_k(X, A)`` or one of its two parts; kinds: full, up_down (ud), down_up (du)."""
    try:
        kind = _ALIASES[kind]
    except KeyError:
        raise DomainError(f"unknown Laplacian kind {kind!r}") from None
    _check_k(pair, k)
    prod = _product_form(pair, k, kind)
    closed = _closed_form(pair, k, kind)
    if prod.entries != closed.entries:
        raise InvariantViolation(f"product and closed-form L_{k} ({kind}) disagree")
    return LaplacianPart(kind, k, prod, pair)


def tau_zero(lam_max: float) -> float:
    return ZERO_REL * max(1.0, abs(lam_max))


def eigenvalues(M: IntegerMatrix | np.ndarray) -> np.ndarray:
    a = M.to_numpy() if isinstance(M, IntegerMatrix) else np.asarray(M, dtype=float)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(a)


def pseudo_det_from_charpoly(coeffs: list[int] | tuple[int, ...], rank: int) -> int:
    """Absolute value of the coefficient of ``y^{n-r}``, the product of nonzero eigenvalues."""
    return abs(coeffs[rank])


def matrix_spectrum(M: IntegerMatrix) -> SpectrumReport:
    ev = eigenvalues(M)
    rows = M.rows()
    r = exact.rank(rows)
    cp = exact.charpoly(rows)
    n = M.shape[0]
    tz = tau_zero(float(ev[-1]) if n else 0.0)
    report = SpectrumReport(tuple(float(x) for x in ev), r, pseudo_det_from_charpoly(cp, r),
                            n - r, tz, tuple(cp))
    float_zeros = sum(1 for x in ev if abs(x) < tz)
    if float_zeros != report.zero_multiplicity:
        raise InvariantViolation(
            f"floating zero count {float_zeros} differs from exact nullity {report.zero_multiplicity}")
    return report


def spectrum(part: LaplacianPart | IntegerMatrix) -> SpectrumReport:
    """Eigenvalues (floating), exact rank, and exact pseudo-determinant."""
    M = part.matrix if isinstance(part, LaplacianPart) else part
    return _cached_spectrum(M)


@lru_cache(maxsize=2048)
def _cached_spectrum(M: IntegerMatrix) -> SpectrumReport:
    return matrix_spectrum(M)


def spectral_gap(pair: ComplexPair, k: int) -> float:
    """Smallest eigenvalue of ``L_k(X, A)``; ``inf`` when there are no relative k-faces."""
    return spectrum(laplacian(pair, k, "full")).smallest


def chi(pair: ComplexPair, k: int) -> int:
    """``χ_{k-1}(X, A)`` from face counts and Betti numbers; checked against rank ∂_k."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    value = sum((-1) ** (j - k) * (pair.f(j) - betti(pair, j)) for j in range(k, pair.dim + 1))
    r = boundary_rank(pair, k)
    if value != r:
        raise InvariantViolation(f"χ_{k - 1} = {value} but rank ∂_{k} = {r}")
    return value


def zero_multiplicities(pair: ComplexPair, k: int) -> tuple[int, int]:
    """Nullities of the up-down and down-up parts: ``(f_k - χ_k, f_k - χ_{k-1})``."""
    _check_k(pair, k)
    f = pair.f(k)
    expected = (f - chi(pair, k + 1), f - chi(pair, k))
    measured = tuple(spectrum(laplacian(pair, k, kind)).zero_multiplicity
                     for kind in ("up_down", "down_up"))
    if measured != expected:
        raise InvariantViolation(f"nullities {measured} differ from {expected}")
    return expected


@dataclass(frozen=True)
class LambdaMaxReport:
    k: int
    lambda_max: float
    upper_bound: int
    upper_holds: bool
    lower_bound: float | None
    lower_holds: bool | None

    @property
    def vacuous_lower(self) -> bool:
        return self.lower_bound is None


def lambda_max_bounds(pair: ComplexPair, k: int) -> LambdaMaxReport:
    """Degree-based upper and lower estimates for the top eigenvalue of the up-down part."""
    _check_k(pair, k)
    X = pair.complex
    part = spectrum(laplacian(pair, k, "up_down"))
    lam = part.largest
    tz = part.tau_zero
    max_deg = max((len(cofaces(X, s)) for s in X.faces(k)), default=0)
    upper = (k + 2) * max_deg
    c = chi(pair, k + 1)
    if c > 0:
        lower = sum(len(cofaces(X, s)) for s in pair.rel_faces(k)) / c
        lower_ok = lower <= lam + tz
    else:
        lower, lower_ok = None, None
    return LambdaMaxReport(k, lam, upper, lam <= upper + tz, lower, lower_ok)


def same_nonzero_spectrum(a: list[float] | tuple[float, ...], b: list[float] | tuple[float, ...],
                          rel: float = ZERO_REL) -> bool:
    """Multisets agree up to the number of zeros, within relative tolerance ``rel``."""
    top = max([abs(x) for x in list(a) + list(b)] + [1.0])
    cut = rel * top
    xa = sorted(x for x in a if abs(x) >= cut)
    xb = sorted(x for x in b if abs(x) >= cut)
    if len(xa) != len(xb):
        return False
    return all(abs(x - y) <= rel * max(1.0, abs(x), abs(y)) for x, y in zip(xa, xb))
