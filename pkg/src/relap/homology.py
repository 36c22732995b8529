"""Integer relative homology through ranks and the Smith normal form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import exact
from .chains import IntegerMatrix, chain_basis, pair_boundary
from .complex_core import ComplexPair


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _smith_factors(rows: list[list[int]]) -> list[int]:
    A = [r[:] for r in rows]
    n_rows = len(A)
    n_cols = len(A[0]) if A else 0
    diag: list[int] = []
    t = 0
    while t < min(n_rows, n_cols):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, n_rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n_cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, n_rows) for j in range(t + 1, n_cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move a remainder of smaller magnitude into the pivot position
            small = None
            for i in range(t + 1, n_rows):
                if A[i][t] and (small is None or abs(A[i][t]) < small[0]):
                    small = (abs(A[i][t]), i, None)
            for j in range(t + 1, n_cols):
                if A[t][j] and (small is None or abs(A[t][j]) < small[0]):
                    small = (abs(A[t][j]), None, j)
            _, si, sj = small
            if si is not None:
                A[t], A[si] = A[si], A[t]
            else:
                for row in A:
                    row[t], row[sj] = row[sj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def smith_normal_form(M: IntegerMatrix | Sequence[Sequence[int]]) -> SmithForm:
    """Nonzero invariant factors ``α_1 | α_2 | ...`` of an integer matrix."""
    rows = M.rows() if isinstance(M, IntegerMatrix) else [list(map(int, r)) for r in M]
    diag = _smith_factors(rows)
    # the elimination above already enforces divisibility; normalise defensively
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = math.gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return SmithForm(tuple(diag))


@dataclass(frozen=True)
class HomologySummary:
    k: int
    betti: int
    torsion_factors: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion_factors)

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion_factors

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts += [f"Z/{a}" for a in self.torsion_factors]
        return " ⊕ ".join(parts) if parts else "0"


@lru_cache(maxsize=4096)
def boundary_rank(pair: ComplexPair, k: int, augmented: bool = False) -> int:
    """Exact rank of the relative boundary map out of degree ``k``."""
    return exact.rank(pair_boundary(pair, k, augmented).rows())


@lru_cache(maxsize=4096)
def relative_homology(pair: ComplexPair, k: int, augmented: bool = False) -> HomologySummary:
    """``H_k(X, A)`` as Betti number plus torsion coefficients.

    Defined for every integer ``k``; degrees without relative faces give the
    zero group.  ``augmented=True`` uses reduced chains (see ``chain_basis``).
    """
    snf = smith_normal_form(pair_boundary(pair, k + 1, augmented))
    torsion = tuple(a for a in snf.invariant_factors if a > 1)
    return HomologySummary(k, betti(pair, k, augmented), torsion)


def betti(pair: ComplexPair, k: int, augmented: bool = False) -> int:
    n = len(chain_basis(pair, k, augmented))
    return n - boundary_rank(pair, k, augmented) - boundary_rank(pair, k + 1, augmented)


def betti_numbers(pair: ComplexPair) -> list[int]:
    return [betti(pair, k) for k in range(pair.dim + 1)]


def torsion_order_mod_free(pair: ComplexPair, k: int, augmented: bool = False) -> int:
    """Order of ``H_k(X, A)`` modulo its free part."""
    return relative_homology(pair, k, augmented).torsion_order


def euler_poincare_check(pair: ComplexPair) -> bool:
    """Alternating sums of relative face counts and Betti numbers agree."""
    lhs = sum((-1) ** i * pair.f(i) for i in range(pair.dim + 1))
    rhs = sum((-1) ** i * b for i, b in enumerate(betti_numbers(pair)))
    return lhs == rhs
