import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from instances import random_pairs
from relap.chains import IntegerMatrix
from relap.complex_core import ComplexPair, from_facets, simplex, skeleton, skeleton_simplex
from relap.homology import (
    HomologySummary,
    betti,
    betti_numbers,
    boundary_rank,
    euler_poincare_check,
    relative_homology,
    smith_normal_form,
    torsion_order_mod_free,
)

PAIRS = random_pairs(200)

RP2 = from_facets([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
                   [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5]])
TORUS = from_facets([sorted({i, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]
                    + [sorted({i, (i + 2) % 7, (i + 3) % 7}) for i in range(7)])


def reduced_betti_oracle(X, k):
    """Reduced Betti number over Q from boundary matrices built here from scratch."""
    def faces(j):
        return [f for f in X if len(f) == j + 1]

    def rank(j):
        rows, cols = faces(j - 1), faces(j)
        if not rows or not cols:
            return 0
        M = sympy.zeros(len(rows), len(cols))
        index = {f: i for i, f in enumerate(rows)}
        for c, s in enumerate(cols):
            for i in range(len(s)):
                M[index[s[:i] + s[i + 1:]], c] = (-1) ** i
        return M.rank()

    return len(faces(k)) - rank(k) - rank(k + 1)


def snf_factors_oracle(rows):
    if not rows or not rows[0]:
        return []
    D = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@given(st.integers(0, 5).flatmap(lambda r: st.integers(0, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r))))
@settings(max_examples=200, deadline=None)
def test_snf_matches_sympy(rows):
    mine = smith_normal_form(rows).invariant_factors
    assert list(mine) == snf_factors_oracle(rows)
    for a, b in zip(mine, mine[1:]):
        assert b % a == 0


def test_snf_on_integer_matrix_and_blowup():
    M = IntegerMatrix.from_rows([[2, 4], [6, 8]], ((0,), (1,)), ((0,), (1,)))
    assert list(smith_normal_form(M).invariant_factors) == [2, 4]
    big = [[(i + 1) * 10**20 + j for j in range(4)] for i in range(4)]
    assert list(smith_normal_form(big).invariant_factors) == snf_factors_oracle(big)


@pytest.mark.parametrize("name,X,expected", [
    ("point", simplex(0), ["Z", "0"]),
    ("sphere", skeleton_simplex(3, 2), ["Z", "0", "Z"]),
    ("circle", skeleton_simplex(2, 1), ["Z", "Z"]),
    ("torus", TORUS, ["Z", "Z^2", "Z"]),
    ("projective plane", RP2, ["Z", "Z/2", "0"]),
])
def test_known_spaces(name, X, expected):
    pair = ComplexPair.absolute(X)
    got = [str(relative_homology(pair, k)) for k in range(len(expected))]
    assert got == expected, name


def test_relative_examples():
    disk = simplex(2)
    circle = skeleton(disk, 1)
    assert str(relative_homology(ComplexPair(disk, circle), 2)) == "Z"
    assert relative_homology(ComplexPair(disk, circle), 1).is_zero()
    # a segment relative to its endpoints has H_1 = Z
    seg = simplex(1)
    assert str(relative_homology(ComplexPair(seg, from_facets([[0], [1]])), 1)) == "Z"
    assert relative_homology(ComplexPair(disk, disk), 1).is_zero()


def test_summary_formatting():
    assert str(HomologySummary(1, 2, (2, 6))) == "Z^2 ⊕ Z/2 ⊕ Z/6"
    assert str(HomologySummary(0, 0, ())) == "0"
    assert HomologySummary(0, 0, (3, 3)).torsion_order == 9


def test_rank_consistency():
    for pair in PAIRS:
        for k in range(0, pair.dim + 2):
            h = relative_homology(pair, k)
            assert h.betti == pair.f(k) - boundary_rank(pair, k) - boundary_rank(pair, k + 1)


def test_k0_relative_boundary_has_rank_zero():
    for pair in PAIRS:
        assert boundary_rank(pair, 0) == 0


def test_euler_poincare():
    for pair in PAIRS:
        assert euler_poincare_check(pair)
        chi_faces = sum((-1) ** k * pair.f(k) for k in range(pair.dim + 1))
        assert chi_faces == sum((-1) ** k * b for k, b in enumerate(betti_numbers(pair)))


def test_vertex_free_subcomplex_gives_reduced_betti():
    for pair in PAIRS[:120]:
        X = pair.complex
        rel = ComplexPair(X, from_facets([]))
        for k in range(0, X.dim + 1):
            reduced = reduced_betti_oracle(X, k)
            if k >= 1:
                assert betti(rel, k) == reduced
            else:
                assert betti(rel, 0) == reduced + 1
            assert betti(rel, k, augmented=True) == reduced


def test_torsion_order_mod_free():
    assert torsion_order_mod_free(ComplexPair.absolute(RP2), 1) == 2
    assert torsion_order_mod_free(ComplexPair.absolute(TORUS), 1) == 1
