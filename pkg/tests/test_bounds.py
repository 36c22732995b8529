import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from instances import discrete_boundary_instances, random_graph, relative_instances
from relap import DomainError
from relap.bounds import (
    additive_compound,
    algebraic_connectivity,
    missing_face_bound,
    connectivity_bound,
    boundary_interval,
    comparison_bound,
    fiedler_check,
    flag_vanishing_bound,
    k_sums,
)
from relap.complex_core import (
    ComplexPair,
    d_circuit,
    d_path,
    d_star,
    flag_complex,
    from_facets,
    model_join,
    random_subcomplex,
    simplex,
    skeleton_simplex,
)
from relap.homology import betti
from relap.spectra import laplacian, spectrum

TAU = 1e-6


def sym_int_matrices(n):
    return arrays(np.int64, (n, n), elements=st.integers(-6, 6)).map(lambda M: M + M.T)


@given(st.integers(1, 6).flatmap(sym_int_matrices))
@settings(max_examples=80, deadline=None)
def test_fiedler_property(M):
    for k in range(1, M.shape[0] + 1):
        assert fiedler_check(M, k)


def test_additive_compound_small_cases():
    M = np.array([[1.0, 2.0, 0.0], [2.0, 3.0, 5.0], [0.0, 5.0, 4.0]])
    assert np.allclose(additive_compound(M, 1), M)
    assert np.allclose(additive_compound(M, 3), [[np.trace(M)]])
    C2 = additive_compound(M, 2)
    # subsets (0,1), (0,2), (1,2)
    assert np.allclose(np.diag(C2), [4, 5, 7])
    assert np.allclose(C2, C2.T)
    assert k_sums([1, 2, 3], 2) == [3, 4, 5]
    with pytest.raises(DomainError):
        additive_compound(M, 4)


def test_compound_of_graph_laplacian_is_laplacian_of_subsets():
    # the k-th compound of the vertex Laplacian of K_n acting on k-subsets
    L = spectrum(laplacian(ComplexPair.absolute(skeleton_simplex(3, 1)), 0)).eigenvalues
    C = additive_compound(laplacian(ComplexPair.absolute(skeleton_simplex(3, 1)), 0).matrix.to_numpy(), 2)
    assert np.allclose(np.sort(np.linalg.eigvalsh(C)), k_sums(L, 2))


def test_algebraic_connectivity():
    assert math.isclose(algebraic_connectivity(skeleton_simplex(4, 1)), 5.0)
    assert math.isclose(algebraic_connectivity(d_path(1, 2)), 1.0)
    assert algebraic_connectivity(from_facets([[0], [1]])) == pytest.approx(0.0, abs=1e-12)
    assert algebraic_connectivity(simplex(0)) == 0.0


def assert_sound(r):
    assert r.status != "violated", r
    assert r.measured_gap >= float(r.bound_value) - TAU, r
    if r.certificate:
        assert r.measured_gap > TAU


@pytest.mark.parametrize("seed", range(3))
def test_missing_face_bound_random(seed):
    for pair, k in discrete_boundary_instances(60, seed=100 + seed):
        r = missing_face_bound(pair, k)
        assert_sound(r)
        d = r.details
        assert d["refined_bound"] >= d["weak_bound"]
        if not d["degenerate_h"] and not d["constant_boundary_count"]:
            assert not r.equality


@pytest.mark.parametrize("h,n,k", [(1, 3, 1), (1, 4, 2), (1, 5, 2), (1, 5, 3), (2, 5, 3), (2, 6, 3), (2, 7, 4), (1, 6, 4)])
def test_missing_face_bound_equality_on_models(h, n, k):
    X = model_join(h, n, k)
    r = missing_face_bound(ComplexPair.absolute(X), k)
    assert r.details["h_prime"] == h and r.details["n_prime"] == n
    assert r.details["constant_boundary_count"] and r.details["model_match"]
    assert r.equality and r.status == "holds"
    assert math.isclose(r.measured_gap, float(r.details["weak_bound"]), abs_tol=TAU)


def test_missing_face_bound_two_edge_path():
    r = missing_face_bound(ComplexPair(d_path(1, 2), from_facets([[0], [2]])), 1)
    assert r.bound_value == 0 and abs(r.measured_gap) < TAU
    assert r.equality and r.details["model_match"]


def test_missing_face_bound_complete_simplex_is_flagged():
    r = missing_face_bound(ComplexPair.absolute(simplex(3)), 1)
    assert r.details["degenerate_h"] and r.details["h_prime"] is None
    assert_sound(r)


def test_missing_face_bound_rejects():
    with pytest.raises(DomainError):
        missing_face_bound(ComplexPair.absolute(simplex(2)), 0)
    with pytest.raises(DomainError):
        missing_face_bound(ComplexPair(d_path(1, 3), from_facets([[1]])), 1)


@pytest.mark.parametrize("seed", range(3))
def test_flag_bound_random(seed):
    for pair, k in discrete_boundary_instances(60, flag=True, seed=200 + seed):
        assert_sound(connectivity_bound(pair, k))


def test_flag_bound_simplex_certificate():
    r = connectivity_bound(ComplexPair.absolute(simplex(3)), 1)
    assert math.isclose(float(r.bound_value), 4.0) and math.isclose(r.measured_gap, 4.0)
    assert r.certificate and betti(ComplexPair.absolute(simplex(3)), 1) == 0
    with pytest.raises(DomainError):
        connectivity_bound(ComplexPair.absolute(skeleton_simplex(2, 1)), 1)


def test_connectivity_bound_on_four_cycle():
    C4 = flag_complex([(0, 1), (1, 2), (2, 3), (0, 3)])
    r = connectivity_bound(ComplexPair.absolute(C4), 1)
    assert r.details["lambda2"] == pytest.approx(2.0)
    assert float(r.bound_value) == pytest.approx(0.0, abs=TAU) and abs(r.measured_gap) < TAU
    assert r.equality and not r.certificate and r.status == "holds"


def test_vacuous_when_everything_is_relative():
    X = simplex(2)
    for fn in (comparison_bound, flag_vanishing_bound):
        assert fn(ComplexPair(X, X), 1).status == "vacuous"


@pytest.mark.parametrize("seed", range(3))
def test_comparison_bound_random(seed):
    for pair, k in relative_instances(60, seed=300 + seed):
        assert_sound(comparison_bound(pair, k))


def test_comparison_bound_triangle_with_edge():
    r = comparison_bound(ComplexPair(simplex(2), from_facets([[0, 1]])), 1)
    assert r.bound_value == pytest.approx(2.0) and r.measured_gap == pytest.approx(2.0)
    assert r.equality and r.certificate and r.details["overlap_term"] == 1


def test_flag_vanishing_random():
    rng = random.Random(400)
    for _ in range(100):
        n = rng.randint(3, 7)
        X = flag_complex(random_graph(rng, n, rng.uniform(0.4, 0.95)), range(n))
        if X.dim < 1:
            continue
        pair = ComplexPair(X, random_subcomplex(X, rng.uniform(0.0, 0.4), rng))
        k = rng.randint(1, X.dim)
        assert_sound(flag_vanishing_bound(pair, k))


def test_flag_vanishing_complete_graph_with_a_vertex():
    X = flag_complex(itertools.combinations(range(4), 2))
    r = flag_vanishing_bound(ComplexPair(X, from_facets([[0]])), 1)
    assert r.details["lambda2"] == pytest.approx(4.0)
    assert_sound(r)
    # 2*4 - 4 - 3 = 1; lambda2 = 4 exceeds (4 + 3)/2, so H_1 vanishes
    assert r.bound_value == pytest.approx(1.0) and r.measured_gap == pytest.approx(1.0)
    assert r.details["threshold"] == Fraction(7, 2) and r.certificate
    assert betti(ComplexPair(X, from_facets([[0]])), 1) == 0


def test_certificates_are_sound():
    issued = 0
    for pair, k in relative_instances(150, seed=500):
        r = comparison_bound(pair, k)
        if r.certificate:
            assert betti(pair, k) == 0
            issued += 1
    for pair, k in discrete_boundary_instances(150, flag=True, seed=501):
        r = connectivity_bound(pair, k)
        if r.certificate:
            assert betti(pair, k) == 0
            issued += 1
    assert issued > 20


@pytest.mark.parametrize("d,m", [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (2, 5)])
def test_stars_have_gap_d(d, m):
    r = boundary_interval(d_star(d, m))
    assert r.measured_gap == pytest.approx(d, abs=TAU)
    assert r.status == "holds" and r.bound_value <= d <= r.upper_value


@pytest.mark.parametrize("m", range(4, 9))
def test_cycles_have_gap_zero(m):
    C = d_circuit(1, m)
    gap = spectrum(laplacian(ComplexPair.absolute(C), 1)).smallest
    assert abs(gap) <= TAU
    # no boundary vertices, so the interval is [0, 0] and H_1(C, {∅}) = Z meets the hypothesis
    r = boundary_interval(C)
    assert r.status == "holds" and r.bound_value == r.upper_value == 0


def test_hypothesis_not_met_on_mobius_strip():
    # the non-orientable strip has H_2(X, B(X)) = 0 and its gap escapes the interval
    r = boundary_interval(d_circuit(2, 5))
    assert r.status == "hypothesis-not-met" and r.details["relative_betti"] == 0
    assert not r.holds and r.measured_gap > float(r.upper_value) + TAU


def test_orientable_strip_has_gap_d_minus_one():
    gap = spectrum(laplacian(ComplexPair.absolute(d_circuit(2, 6)), 2)).smallest
    assert gap == pytest.approx(1.0, abs=TAU)


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("m", range(2, 9))
def test_paths_gap_between_d_minus_one_and_d(d, m):
    X = d_path(d, m)
    r = boundary_interval(X)
    assert d - 1 - TAU <= r.measured_gap <= d + TAU
    assert r.status == "holds" and r.bound_value <= r.measured_gap + TAU <= r.upper_value + 2 * TAU
    expected = (d, d) if m == 2 else (d - 1, d)
    assert (r.bound_value, r.upper_value) == expected
