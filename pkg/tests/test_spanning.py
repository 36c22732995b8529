import itertools
import math
import random

import pytest

from instances import random_pair
from relap import BudgetExceeded, DomainError
from relap.complex_core import ComplexPair, from_facets, skeleton, skeleton_simplex
from relap.homology import betti, relative_homology
from relap.spanning import (
    det_submatrix_criterion,
    enumerate_forests,
    enumerate_trees,
    forest_complex,
    forest_conditions,
    forest_size,
    greedy_forest,
    is_relative_forest,
    is_relative_tree,
    tree_complex,
    tree_size,
    uses_augmented,
    verify_matrix_tree_i,
    verify_matrix_tree_ii,
)


def small_cases(count=120, max_vertices=6, budget=4000):
    """(pair, k) with k >= 1 from seeded random pairs, skipping oversized candidate sets."""
    out = []
    seed = 1000
    while len(out) < count:
        pair = random_pair(seed, max_vertices)
        seed += 1
        for k in range(1, pair.dim + 1):
            aug = uses_augmented(pair, k)
            n, r = len(pair.rel_faces(k)), tree_size(pair, k, aug)
            if math.comb(n, r) <= budget:
                out.append((pair, k))
    return out[:count]


CASES = small_cases()


def brute_force_tree_sum(pair, k):
    """Sum of squared torsion over all B of the tree size that satisfy the homological definition."""
    aug = uses_augmented(pair, k)
    Ak = skeleton(pair.subcomplex, k)
    total = count = 0
    for B in itertools.combinations(pair.rel_faces(k), tree_size(pair, k, aug)):
        Y = tree_complex(pair, k, B)
        if is_relative_tree(pair, Y, k, aug):
            total += relative_homology(ComplexPair(Y, Ak), k - 1, aug).torsion_order ** 2
            count += 1
    return total, count


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cayley_counts(n):
    r = verify_matrix_tree_i(ComplexPair.absolute(skeleton_simplex(n - 1, 1)), 1)
    assert r.verified and r.n_trees == r.tree_sum == n ** (n - 2)
    assert r.lhs == n ** (n - 1)


def test_two_dimensional_simplex_skeleton_counts():
    r4 = verify_matrix_tree_i(ComplexPair.absolute(skeleton_simplex(3, 2)), 2)
    assert (r4.tree_sum, r4.lhs, r4.forest_sum_num) == (4, 64, 16)
    r5 = verify_matrix_tree_i(ComplexPair.absolute(skeleton_simplex(4, 2)), 2, paranoid=True)
    assert (r5.tree_sum, r5.lhs, r5.forest_sum_num) == (125, 15625, 125)


def test_torsion_weighted_tree():
    # the projective plane is acyclic in degree 2, so it is its own unique 2-tree, weighted by |Z/2|^2
    rp2 = from_facets([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
                       [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5]])
    pair = ComplexPair.absolute(rp2)
    trees = enumerate_trees(pair, 2)
    assert len(trees) == 1 and trees[0].weight == 4 and trees[0].complex == rp2
    r = verify_matrix_tree_i(pair, 2)
    assert r.verified


def test_fast_path_matches_brute_force():
    checked = 0
    for pair, k in CASES:
        if betti(pair, k - 1, uses_augmented(pair, k)) != 0:
            continue
        trees = enumerate_trees(pair, k)
        assert brute_force_tree_sum(pair, k) == (sum(t.weight for t in trees), len(trees))
        checked += 1
    assert checked >= 30


def test_trees_are_forests_and_exist_iff_acyclic_below():
    for pair, k in CASES:
        aug = uses_augmented(pair, k)
        trees = [tree_complex(pair, k, B)
                 for B in itertools.combinations(pair.rel_faces(k), tree_size(pair, k, aug))]
        trees = [Y for Y in trees if is_relative_tree(pair, Y, k, aug)]
        for Y in trees:
            assert is_relative_forest(pair, Y, k, aug)
        assert bool(trees) == (betti(pair, k - 1, aug) == 0)


def test_greedy_forest_is_a_forest():
    for pair, k in CASES:
        aug = uses_augmented(pair, k)
        for j in (k - 1, k):
            G = greedy_forest(pair, j, aug)
            assert is_relative_forest(pair, G, j, aug)


def test_face_count_splits_when_acyclic_below():
    for pair, k in CASES:
        aug = uses_augmented(pair, k)
        if betti(pair, k - 1, aug) == 0:
            assert pair.f(k) == tree_size(pair, k, aug) + betti(pair.skeleton(k), k, aug)
            assert tree_size(pair, k, aug) == forest_size(pair, k, aug)


def test_any_two_forest_conditions_imply_the_third():
    rng = random.Random(5)
    seen = set()
    for pair, k in CASES:
        aug = uses_augmented(pair, k)
        faces = pair.rel_faces(k)
        for _ in range(8):
            B = [f for f in faces if rng.random() < 0.6]
            a, b, c = forest_conditions(pair, tree_complex(pair, k, B), k, aug)
            assert a + b + c != 2
            seen.add((a, b, c))
    assert (True, True, True) in seen and len(seen) >= 3


def test_determinant_criterion_equivalence():
    checked = 0
    for pair, k in CASES[:60]:
        aug = uses_augmented(pair, k)
        if betti(pair, k - 1, aug) != 0:
            continue
        size = tree_size(pair, k, aug)
        Bs = list(itertools.combinations(pair.rel_faces(k), size))
        Cs = list(itertools.combinations(pair.rel_faces(k - 1), size))
        if len(Bs) * len(Cs) > 3000:
            continue
        A_low = skeleton(pair.subcomplex, max(k - 1, -1))
        for B in Bs:
            tree = is_relative_tree(pair, tree_complex(pair, k, B), k, aug)
            for C in Cs:
                G = forest_complex(pair, k, C)
                forest = A_low <= G and is_relative_forest(pair, G, k - 1, aug)
                nonsingular, _ = det_submatrix_criterion(pair, k, B, C)
                assert nonsingular == (tree and forest), (pair, k, B, C)
                checked += 1
    assert checked > 500


def test_identities_on_random_pairs():
    verified = 0
    for pair, k in CASES:
        r1 = verify_matrix_tree_i(pair, k)
        r2 = verify_matrix_tree_ii(pair, k)
        if betti(pair, k - 1, uses_augmented(pair, k)) != 0:
            assert r1.status == r2.status == "vacuous"
            continue
        assert r1.verified and r2.verified, (pair, k, r1, r2)
        assert r1.rhs == r1.lhs
        verified += 1
    assert verified >= 50


def test_identity_with_every_forest():
    pair = ComplexPair.absolute(skeleton_simplex(3, 1))
    for G in enumerate_forests(pair, 1):
        r = verify_matrix_tree_ii(pair, 1, forest=G)
        assert r.verified and r.det_ud == 16
    assert verify_matrix_tree_ii(pair, 1, forest=from_facets([[2]])).det_ud == 16
    with pytest.raises(DomainError):
        verify_matrix_tree_ii(pair, 1, forest=from_facets([[0], [1]]))


def test_vacuous_when_lower_homology_survives():
    pair = ComplexPair.absolute(from_facets([[0, 1], [2, 3]]))
    assert verify_matrix_tree_i(pair, 1).status == "vacuous"
    assert verify_matrix_tree_ii(pair, 1).status == "vacuous"
    assert enumerate_trees(pair, 1) == []


def test_k0_is_trivial():
    pair = ComplexPair(skeleton_simplex(3, 1), from_facets([[0]]))
    r = verify_matrix_tree_i(pair, 0)
    assert r.verified and r.lhs == 1 and r.rhs == 1


def test_budget_guard():
    pair = ComplexPair.absolute(skeleton_simplex(5, 1))
    with pytest.raises(BudgetExceeded):
        enumerate_trees(pair, 1, budget=100)
    with pytest.raises(DomainError):
        verify_matrix_tree_i(pair, 3)


def test_candidate_validation():
    pair = ComplexPair.absolute(skeleton_simplex(3, 1))
    with pytest.raises(DomainError):
        forest_conditions(pair, from_facets([[0, 1]]), 1)
    with pytest.raises(DomainError):
        det_submatrix_criterion(pair, 1, [(0, 1)], [(1,)])
