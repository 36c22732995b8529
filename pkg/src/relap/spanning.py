"""Relative spanning trees and forests, and exact checks of the relative
matrix-tree identities.

When the subcomplex has no vertices (``A = {∅}``) and ``k >= 1`` the chain
complex is augmented by ``C_{-1} = Z``, so degree-zero homology is reduced.
This is what makes graph spanning trees the 1-dimensional trees of
``(G, {∅})``.  With vertices in ``A`` (or ``k = 0``) the relative chains are
used as they are.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .chains import pair_boundary, submatrix
from .complex_core import ComplexPair, Face, SimplicialComplex, skeleton
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .homology import betti, relative_homology
from .spectra import laplacian, spectrum

DEFAULT_BUDGET = 10**7


def uses_augmented(pair: ComplexPair, k: int) -> bool:
    """Whether degree-zero homology is taken reduced for dimension ``k``."""
    return k >= 1 and pair.subcomplex.f(0) == 0


def _aug(pair: ComplexPair, k: int, augmented: bool | None) -> bool:
    return uses_augmented(pair, k) if augmented is None else augmented


@dataclass(frozen=True)
class CandidateSubcomplex:
    """``X_B`` (kind "tree") or ``X_C`` (kind "forest") with its squared-torsion weight."""

    kind: str
    faces: tuple[Face, ...]
    complex: SimplicialComplex
    weight: int


def _pair_skeleton(pair: ComplexPair, p: int) -> ComplexPair:
    return pair.skeleton(p) if p >= -1 else ComplexPair(SimplicialComplex(), SimplicialComplex())


def tree_size(pair: ComplexPair, k: int, augmented: bool | None = None) -> int:
    """``f_k(X,A) - β_k(X_(k), A_(k))``: the number of k-faces a tree keeps."""
    aug = _aug(pair, k, augmented)
    return pair.f(k) - betti(_pair_skeleton(pair, k), k, aug)


def forest_size(pair: ComplexPair, k: int, augmented: bool | None = None) -> int:
    """``β_{k-1}(X_(k-1), A_(k-1))``: the number of (k-1)-faces a forest drops."""
    aug = _aug(pair, k, augmented)
    return betti(_pair_skeleton(pair, k - 1), k - 1, aug)


def tree_complex(pair: ComplexPair, k: int, B: Iterable[Face]) -> SimplicialComplex:
    """``X_B = B ∪ A_k ∪ X_(k-1)``."""
    faces = set(B) | set(pair.subcomplex.faces(k)) | skeleton(pair.complex, k - 1).all_faces
    return _as_complex(faces)


def forest_complex(pair: ComplexPair, k: int, C: Iterable[Face]) -> SimplicialComplex:
    """``X_C = (X_{k-1} \\ C) ∪ X_(k-2)``."""
    drop = set(C)
    faces = {f for f in pair.complex.faces(k - 1) if f not in drop}
    faces |= skeleton(pair.complex, k - 2).all_faces if k >= 1 else {()}
    return _as_complex(faces)


def _as_complex(faces: set[Face]) -> SimplicialComplex:
    try:
        return SimplicialComplex(faces)
    except DomainError as exc:
        raise InvariantViolation(f"candidate is not a complex: {exc}") from None


def _check_candidate(pair: ComplexPair, Y: SimplicialComplex, k: int) -> ComplexPair:
    X, A = pair.complex, pair.subcomplex
    Ak = skeleton(A, k)
    if not (Ak <= Y and Y <= skeleton(X, k)):
        raise DomainError("candidate must satisfy A_(k) ⊆ Υ ⊆ X_(k)")
    if k >= 0 and skeleton(Y, k - 1) != skeleton(X, k - 1):
        raise DomainError("candidate must contain the whole (k-1)-skeleton of X")
    return ComplexPair(Y, Ak)


def forest_conditions(pair: ComplexPair, Y: SimplicialComplex, k: int,
                      augmented: bool | None = None) -> tuple[bool, bool, bool]:
    """The three forest conditions (a), (b), (c) for the candidate ``Υ``.

    Any two of them force the third; a candidate where exactly two hold is
    reported as an invariant violation.
    """
    aug = _aug(pair, k, augmented)
    sub = _check_candidate(pair, Y, k)
    a = betti(sub, k, aug) == 0
    b = betti(sub, k - 1, aug) == betti(pair, k - 1, aug)
    c = sub.f(k) == tree_size(pair, k, aug)
    if a + b + c == 2:
        raise InvariantViolation(f"forest conditions (a,b,c) = {(a, b, c)}: two hold but not the third")
    return a, b, c


def is_relative_forest(pair: ComplexPair, Y: SimplicialComplex, k: int,
                       augmented: bool | None = None) -> bool:
    return all(forest_conditions(pair, Y, k, augmented))


def is_relative_tree(pair: ComplexPair, Y: SimplicialComplex, k: int,
                     augmented: bool | None = None) -> bool:
    aug = _aug(pair, k, augmented)
    sub = _check_candidate(pair, Y, k)
    return (betti(sub, k, aug) == 0 and betti(sub, k - 1, aug) == 0
            and sub.f(k) == tree_size(pair, k, aug))


def greedy_forest(pair: ComplexPair, k: int, augmented: bool | None = None) -> SimplicialComplex:
    """One k-dimensional forest, built by deleting k-faces that carry a cycle.

    Start from ``X_(k)``; while ``β_k > 0`` pick a nonzero relative cycle and
    remove a face in its support.
    """
    aug = _aug(pair, k, augmented)
    A = skeleton(pair.subcomplex, max(k, -1))
    current = skeleton(pair.complex, k) if k >= -1 else SimplicialComplex()
    while True:
        sub = ComplexPair(current, A)
        if betti(sub, k, aug) == 0:
            break
        M = pair_boundary(sub, k, aug)
        vec = exact.kernel_vector(M.rows(), M.shape[1])
        if vec is None:
            raise InvariantViolation("positive Betti number but no kernel vector")
        face = M.col_labels[next(i for i, x in enumerate(vec) if x != 0)]
        current = SimplicialComplex._trusted(current.all_faces - {face})
    if not is_relative_forest(pair, current, k, aug):
        raise InvariantViolation("greedy construction did not produce a forest")
    return current


def _budget_check(n: int, r: int, budget: int) -> None:
    if budget <= 0:
        raise DomainError("budget must be positive")
    total = math.comb(n, r)
    if total > budget:
        raise BudgetExceeded(f"C({n},{r}) = {total} candidates exceeds budget {budget}")


def _torsion(pair: ComplexPair, k: int, aug: bool) -> int:
    return relative_homology(pair, k, aug).torsion_order


def enumerate_trees(pair: ComplexPair, k: int, budget: int = DEFAULT_BUDGET,
                    paranoid: bool = False) -> list[CandidateSubcomplex]:
    """All k-dimensional relative spanning trees, each weighted by ``|H_{k-1}(Υ, A_(k))|²``.

    A candidate ``B`` is accepted when ``det ∂_k[B, C] != 0`` for a fixed forest
    complement ``C``.  With ``paranoid=True`` the homological definition is
    evaluated as well and any disagreement raises.
    """
    aug = uses_augmented(pair, k)
    if betti(pair, k - 1, aug) != 0:
        return []
    size = tree_size(pair, k, aug)
    cands = pair.rel_faces(k)
    _budget_check(len(cands), size, budget)
    gamma = greedy_forest(pair, k - 1, aug)
    C = tuple(f for f in pair.complex.faces(k - 1) if f not in gamma)
    if len(C) != size:
        raise InvariantViolation(f"|C| = {len(C)} differs from |B| = {size}")
    Ak = skeleton(pair.subcomplex, k)
    out = []
    for B in itertools.combinations(cands, size):
        nonsingular = exact.det(submatrix(pair.complex, k, B, C).rows()) != 0
        Y = tree_complex(pair, k, B)
        if paranoid and nonsingular != is_relative_tree(pair, Y, k, aug):
            raise InvariantViolation(f"determinant test and tree conditions disagree on {B}")
        if nonsingular:
            t = _torsion(ComplexPair(Y, Ak), k - 1, aug)
            out.append(CandidateSubcomplex("tree", B, Y, t * t))
    return out


def enumerate_forests(pair: ComplexPair, k: int, budget: int = DEFAULT_BUDGET) -> list[CandidateSubcomplex]:
    """All members ``X_C`` of ``F_{k-1}(X, A)``, weighted by ``|H_{k-2}(X_C, A_(k-1)) / Z^β|²``.

    The forest dimension is ``k - 1``; the chain convention follows ``k``.
    """
    aug = uses_augmented(pair, k)
    size = forest_size(pair, k, aug)
    cands = pair.rel_faces(k - 1) if k >= 1 else ()
    _budget_check(len(cands), size, budget)
    A = skeleton(pair.subcomplex, max(k - 1, -1))
    out = []
    for C in itertools.combinations(cands, size):
        G = forest_complex(pair, k, C)
        if is_relative_forest(pair, G, k - 1, aug):
            t = _torsion(ComplexPair(G, A), k - 2, aug)
            out.append(CandidateSubcomplex("forest", C, G, t * t))
    return out


@dataclass(frozen=True)
class MatrixTreeReport:
    k: int
    status: str
    lhs: int
    tree_sum: int
    forest_sum_num: int
    forest_sum_den: int
    n_trees: int
    n_forests: int

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    @property
    def rhs(self) -> Fraction:
        return Fraction(self.tree_sum * self.forest_sum_num, self.forest_sum_den)


def _check_dim(pair: ComplexPair, k: int) -> None:
    if k < 0 or k > max(pair.dim, 0):
        raise DomainError(f"k={k} outside 0..{max(pair.dim, 0)}")


def _ud_pseudo_det(pair: ComplexPair, k: int) -> int:
    """Product of nonzero eigenvalues of ``L^{ud}_{k-1}(X, A)``; 1 for the empty matrix at k = 0."""
    if k == 0:
        return 1
    return spectrum(laplacian(pair, k - 1, "up_down")).pseudo_det


def verify_matrix_tree_i(pair: ComplexPair, k: int, budget: int = DEFAULT_BUDGET,
                         paranoid: bool = False) -> MatrixTreeReport:
    """Pseudo-determinant of ``L^{ud}_{k-1}(X, A)`` against the weighted tree and forest sums."""
    _check_dim(pair, k)
    aug = uses_augmented(pair, k)
    lhs = _ud_pseudo_det(pair, k)
    t_X = _torsion(pair, k - 2, aug)
    if betti(pair, k - 1, aug) != 0:
        return MatrixTreeReport(k, "vacuous", lhs, 0, 0, t_X * t_X, 0, 0)
    trees = enumerate_trees(pair, k, budget, paranoid)
    forests = enumerate_forests(pair, k, budget)
    tree_sum = sum(t.weight for t in trees)
    num = sum(f.weight for f in forests)
    den = t_X * t_X
    status = "verified" if lhs * den == tree_sum * num else "violated"
    return MatrixTreeReport(k, status, lhs, tree_sum, num, den, len(trees), len(forests))


@dataclass(frozen=True)
class MatrixTreeIIReport:
    k: int
    status: str
    tree_sum: int
    forest_torsion: int
    torsion_X: int
    det_ud: int

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def verify_matrix_tree_ii(pair: ComplexPair, k: int, forest: SimplicialComplex | CandidateSubcomplex | None = None,
                          budget: int = DEFAULT_BUDGET) -> MatrixTreeIIReport:
    """``tree_sum · |H_{k-2}(Γ)/Z^β|² = |H_{k-2}(X,A)/Z^β|² · det L^{ud}_{k-1}(X, Γ)``.

    ``forest`` defaults to the greedy forest of dimension ``k - 1``.
    """
    _check_dim(pair, k)
    aug = uses_augmented(pair, k)
    if isinstance(forest, CandidateSubcomplex):
        forest = forest.complex
    if betti(pair, k - 1, aug) != 0:
        return MatrixTreeIIReport(k, "vacuous", 0, 1, 1, 0)
    G = greedy_forest(pair, k - 1, aug) if forest is None else forest
    if not is_relative_forest(pair, G, k - 1, aug):
        raise DomainError("Γ is not a relative spanning forest")
    trees = enumerate_trees(pair, k, budget)
    tree_sum = sum(t.weight for t in trees)
    A = skeleton(pair.subcomplex, max(k - 1, -1))
    t_G = _torsion(ComplexPair(G, A), k - 2, aug)
    t_X = _torsion(pair, k - 2, aug)
    d = pair_boundary(ComplexPair(pair.complex, G), k)
    det_ud = exact.det((d @ d.T).rows())
    ok = tree_sum * t_G * t_G == t_X * t_X * det_ud
    return MatrixTreeIIReport(k, "verified" if ok else "violated", tree_sum, t_G, t_X, det_ud)


def det_submatrix_criterion(pair: ComplexPair, k: int, B: Sequence[Face],
                            C: Sequence[Face]) -> tuple[bool, int]:
    """Whether ``∂_k[B, C]`` is nonsingular, and ``|det|``.

    For a nonsingular block the determinant is checked against torsion
    orders computed independently by Smith normal form.
    """
    aug = uses_augmented(pair, k)
    B, C = tuple(sorted(B)), tuple(sorted(C))
    if set(B) - set(pair.rel_faces(k)) or len(B) != tree_size(pair, k, aug):
        raise DomainError("B must be a subset of X_k \\ A_k of the tree size")
    if set(C) - set(pair.rel_faces(k - 1)) or len(C) != forest_size(pair, k, aug):
        raise DomainError("C must be a subset of X_{k-1} \\ A_{k-1} of the forest size")
    d = abs(exact.det(submatrix(pair.complex, k, B, C).rows()))
    if d:
        XB = tree_complex(pair, k, B)
        XC = forest_complex(pair, k, C)
        h_B = relative_homology(ComplexPair(XB, skeleton(pair.subcomplex, k)), k - 1, aug)
        t_C = _torsion(ComplexPair(XC, skeleton(pair.subcomplex, max(k - 1, -1))), k - 2, aug)
        t_X = _torsion(pair, k - 2, aug)
        if h_B.betti != 0 or d * t_X != h_B.torsion_order * t_C:
            raise InvariantViolation(
                f"|det| = {d} but torsion orders give {h_B.torsion_order} * {t_C} / {t_X}")
    return d != 0, d
