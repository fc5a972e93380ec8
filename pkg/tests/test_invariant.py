from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from foldcodes.field import field_new
from foldcodes.invariant import (
    AffineMap,
    InvariantSpaceSpec,
    build_invariant_poly,
    check_functional_eq,
    coefficient_matrix,
    decompose_invariant,
    invariant_generator,
    invariant_space_basis,
    power_sum_residue,
    solve_alpha,
    symmetrize,
    symmetrized_image_basis,
)
from foldcodes.linalg import kernel, rank, rref
from foldcodes.poly import NEG_INF, Polynomial, poly_gcd

from ._util import random_map, random_poly

MAP_FIELDS = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (2, 6)]


def P(F, coeffs):
    return Polynomial(F, coeffs)


# -- polynomial arithmetic -----------------------------------------------------------

def test_divmod_example():
    F = field_new(2, 1)
    q, r = divmod(P(F, [1, 0, 1]), P(F, [1, 1]))
    assert q == P(F, [1, 1]) and r.is_zero()


def test_compose_with_z_and_eval():
    F = field_new(2, 2)
    f = P(F, [3, 0, 2, 1])
    assert f.compose(Polynomial.z(F)) == f
    assert Polynomial.monomial(F, 3)(2) == 1


def test_zero_polynomial_degree_and_division():
    F = field_new(3, 1)
    assert Polynomial.zero(F).degree == NEG_INF
    with pytest.raises(ZeroDivisionError):
        divmod(P(F, [1]), Polynomial.zero(F))


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        P(field_new(2, 2), [1]) + P(field_new(2, 3), [1])


def test_polynomial_is_immutable():
    f = P(field_new(2, 2), [1, 1])
    with pytest.raises(AttributeError):
        f.coeffs = (1,)


poly_case = st.sampled_from(MAP_FIELDS).flatmap(
    lambda pm: st.tuples(st.just(pm), st.integers(0, 2 ** 31), st.integers(-1, 8), st.integers(0, 6)))


@given(poly_case)
def test_division_identity(case):
    pm, seed, da, db = case
    F = field_new(*pm)
    rng = np.random.default_rng(seed)
    a = random_poly(F, da, rng)
    b = random_poly(F, db, rng)
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(poly_case)
def test_compose_and_product_by_evaluation(case):
    pm, seed, da, db = case
    F = field_new(*pm)
    rng = np.random.default_rng(seed)
    a = random_poly(F, da, rng)
    b = random_poly(F, db, rng)
    pts = F.elements()
    assert np.array_equal(np.atleast_1d(a.compose(b)(pts)), np.atleast_1d(a(b(pts))))
    assert np.array_equal(np.atleast_1d((a * b)(pts)), np.atleast_1d(F.mul(a(pts), b(pts))))
    assert np.array_equal(np.atleast_1d((a - b)(pts)), np.atleast_1d(F.sub(a(pts), b(pts))))


def test_from_roots_and_roots():
    F = field_new(3, 2)
    f = Polynomial.from_roots(F, [1, 4, 7])
    assert sorted(f.roots().tolist()) == [1, 4, 7]
    assert f.degree == 3


def test_gcd_and_derivative():
    F = field_new(5, 1)
    a = Polynomial.from_roots(F, [1, 2, 3])
    b = Polynomial.from_roots(F, [2, 3, 4])
    assert poly_gcd(a, b) == Polynomial.from_roots(F, [2, 3])
    assert Polynomial.monomial(F, 5).derivative().is_zero()
    assert P(F, [0, 0, 1]).derivative() == P(F, [0, 2])


# -- affine maps and generators ------------------------------------------------------------

def test_affine_map_basics():
    F = field_new(2, 4)
    a = int(F.elements_of_order(5)[0])
    phi = AffineMap(F, a, 7)
    assert phi.order == 5
    z0 = phi.fixed_point
    assert phi(z0) == z0
    assert phi.power(5).is_identity
    assert AffineMap(F, 1, 3).order == 2
    assert AffineMap(F, 1, 3).fixed_point is None
    with pytest.raises(ValueError):
        AffineMap(F, 0, 1)


def test_generator_examples():
    F = field_new(2, 4)
    assert invariant_generator(AffineMap(F, 1, 1)) == P(F, [0, 1, 1])
    F4 = field_new(2, 2)
    assert invariant_generator(AffineMap(F4, 2, 0)) == Polynomial.monomial(F4, 3)
    with pytest.raises(ValueError):
        invariant_generator(AffineMap(F4, 1, 0))


@pytest.mark.parametrize("pm", MAP_FIELDS)
def test_generator_is_invariant_monic_of_degree_order(pm):
    F = field_new(*pm)
    rng = np.random.default_rng(sum(pm))
    ells = sorted({F.p} | {F.element_order(a) for a in F.nonzero_elements() if a != 1})
    for ell in ells:
        phi = random_map(F, ell, rng)
        R = invariant_generator(phi)
        assert R.degree == ell and R.is_monic()
        assert check_functional_eq(R, phi, 1)


def test_functional_equation_examples():
    F = field_new(2, 2)
    w = AffineMap(F, 2, 0)
    assert check_functional_eq(Polynomial.monomial(F, 3), w, 1)
    assert check_functional_eq(Polynomial.z(F), w, 2)
    assert not check_functional_eq(P(F, [1, 1]), AffineMap(F, 1, 1), 1)


def test_solve_alpha_examples():
    F = field_new(2, 2)
    w = AffineMap(F, 2, 0)
    assert solve_alpha(Polynomial.monomial(F, 3), w) == 1
    F16 = field_new(2, 4)
    rng = np.random.default_rng(3)
    phi = random_map(F16, 5, rng)
    G = build_invariant_poly(random_poly(F16, 2, rng), phi, 1)
    assert solve_alpha(G, phi) == phi.a
    misses = sum(solve_alpha(random_poly(F16, 6, rng), phi) is None for _ in range(20))
    assert misses == 20
    with pytest.raises(ValueError):
        solve_alpha(Polynomial.zero(F16), phi)


def test_build_invariant_examples():
    for m in (3, 5, 7):
        F = field_new(2, m)
        assert build_invariant_poly(P(F, [1, 1]), AffineMap(F, 1, 1)) == P(F, [1, 1, 1])
    F = field_new(2, 4)
    phi = AffineMap(F, int(F.elements_of_order(5)[0]), 0)
    assert build_invariant_poly(P(F, [1]), phi, 0) == P(F, [1])
    G = build_invariant_poly(Polynomial.z(F), phi, 2)
    assert G == Polynomial.monomial(F, 7)
    assert check_functional_eq(G, phi, F.pow(phi.a, 2))
    with pytest.raises(ValueError):
        build_invariant_poly(P(F, [1]), AffineMap(F, 1, 1), 1)


def test_z2_z_1_irreducible_for_odd_m():
    for m in (3, 5, 7):
        F = field_new(2, m)
        assert len(P(F, [1, 1, 1]).roots()) == 0
    assert len(P(field_new(2, 4), [1, 1, 1]).roots()) == 2


def test_decompose_examples():
    F = field_new(2, 5)
    assert decompose_invariant(P(F, [1, 1, 1]), AffineMap(F, 1, 1), 1) == (0, P(F, [1, 1]))
    shift = AffineMap(F, 1, 1)
    assert decompose_invariant(invariant_generator(shift), shift, 1) == (0, Polynomial.z(F))
    F4 = field_new(2, 2)
    assert decompose_invariant(Polynomial.z(F4), AffineMap(F4, 2, 0), 2) == (1, P(F4, [1]))
    with pytest.raises(ValueError):
        decompose_invariant(P(F4, [1, 1]), AffineMap(F4, 1, 1), 1)


round_trip_case = st.tuples(st.sampled_from(MAP_FIELDS), st.integers(0, 2 ** 31), st.integers(-1, 4))


@given(round_trip_case)
def test_round_trip_build_decompose(case):
    pm, seed, dq = case
    F = field_new(*pm)
    rng = np.random.default_rng(seed)
    ells = sorted({F.p} | set(int(F.element_order(a)) for a in F.nonzero_elements() if a != 1))
    phi = random_map(F, ells[int(rng.integers(len(ells)))], rng)
    d = 0 if phi.is_shift else int(rng.integers(phi.order))
    Q = random_poly(F, dq, rng)
    if Q.is_zero() and d == 0:
        Q = P(F, [1])
    G = build_invariant_poly(Q, phi, d)
    alpha = phi.root_of_unity(d)
    assert check_functional_eq(G, phi, alpha)
    if not G.is_zero():
        assert G.degree == phi.order * Q.degree + d
        assert solve_alpha(G, phi) == alpha
        assert decompose_invariant(G, phi, alpha) == (d, Q)


# -- symmetrization ----------------------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_symmetrize_degree_drop(p):
    F = field_new(p, 1)
    s = symmetrize(Polynomial.monomial(F, 2 * p - 1), AffineMap(F, 1, 1), 0)
    assert s.degree == p


def test_symmetrize_constant_vanishes_for_shift():
    F = field_new(3, 2)
    assert symmetrize(P(F, [5]), AffineMap(F, 1, 4), 0).is_zero()


def test_symmetrize_kills_monomials_off_residue():
    F = field_new(2, 4)
    a = int(F.elements_of_order(5)[0])
    phi = AffineMap(F, a, 0)
    for d in range(5):
        for t in range(12):
            s = symmetrize(Polynomial.monomial(F, t), phi, d)
            assert s.is_zero() == ((d + t) % 5 != 0)


@given(round_trip_case)
def test_symmetrize_satisfies_inverse_functional_equation(case):
    pm, seed, dp = case
    F = field_new(*pm)
    rng = np.random.default_rng(seed)
    ells = sorted({F.p} | set(int(F.element_order(a)) for a in F.nonzero_elements() if a != 1))
    phi = random_map(F, ells[int(rng.integers(len(ells)))], rng)
    d = 0 if phi.is_shift else int(rng.integers(phi.order))
    S = symmetrize(random_poly(F, dp + 3, rng), phi, d)
    alpha = phi.root_of_unity(d)
    assert check_functional_eq(S, phi, F.inv(alpha))


def _same_row_space(F, A, B) -> bool:
    Ra, pa = rref(F, A)
    Rb, pb = rref(F, B)
    return pa == pb and np.array_equal(Ra, Rb)


def test_symmetrized_image_shift_case_matches_ring_description():
    for pm in [(2, 3), (3, 2), (5, 1), (7, 1)]:
        F = field_new(*pm)
        phi = AffineMap(F, 1, 1)
        p = F.p
        R = invariant_generator(phi)
        for t in range(0, 4 * p + 1):
            imgs = [symmetrize(Polynomial.monomial(F, j), phi, 0) for j in range(t + 1)]
            top = (t - p + 1) // p
            pred = [R ** k for k in range(top + 1)] if top >= 0 else []
            A = coefficient_matrix(imgs, t + 1)
            B = coefficient_matrix(pred, t + 1)
            assert _same_row_space(F, A, B)


def test_symmetrized_image_twisted_literal_form_misses_constant_at_d0():
    # (z - z0)^(l-d) prefactor with degree bound (t-l+d)/l matches for d >= 1;
    # at d = 0 the symmetrized constant l * 1 is nonzero, so the prefactor is (z - z0)^0
    F = field_new(2, 4)
    phi = AffineMap(F, int(F.elements_of_order(3)[0]), 5)
    ell = 3
    lin = P(F, [F.neg(phi.fixed_point), 1])
    R = invariant_generator(phi)
    for d in range(ell):
        for t in range(0, 4 * ell):
            imgs = [symmetrize(Polynomial.monomial(F, j), phi, d) for j in range(t + 1)]
            A = coefficient_matrix(imgs, t + 1)
            ours = coefficient_matrix(symmetrized_image_basis(phi, d, t), t + 1)
            assert _same_row_space(F, A, ours)
            top = (t - ell + d) // ell
            literal = [lin ** (ell - d) * R ** k for k in range(top + 1)] if top >= 0 else []
            L = coefficient_matrix(literal, max(t + 1, ell + 1))
            if d >= 1:
                assert _same_row_space(F, A, L[:, : t + 1])
            else:
                assert rank(F, A) == rank(F, L) + 1


# -- invariant spaces -------------------------------------------------------------------------

def test_basis_examples():
    F = field_new(2, 2)
    basis = invariant_space_basis(InvariantSpaceSpec(AffineMap(F, 1, 1), 1, 4))
    R = P(F, [0, 1, 1])
    assert basis == [P(F, [1]), R, R * R]
    assert invariant_space_basis(InvariantSpaceSpec(AffineMap(F, 1, 1), 1, -1)) == []
    phi = AffineMap(F, 2, 3)
    basis = invariant_space_basis(InvariantSpaceSpec(phi, 2, 1))
    assert basis == [P(F, [F.neg(phi.fixed_point), 1])]


def test_invariant_spec_validation():
    F = field_new(2, 4)
    with pytest.raises(ValueError):
        InvariantSpaceSpec(AffineMap(F, 1, 0), 1, 3)
    with pytest.raises(ValueError):
        InvariantSpaceSpec(AffineMap(F, 1, 1), 3, 3)
    phi = AffineMap(F, int(F.elements_of_order(3)[0]), 0)
    with pytest.raises(ValueError):
        InvariantSpaceSpec(phi, int(F.elements_of_order(5)[0]), 3)


def _solution_space(F, phi, alpha, t):
    """Kernel of P -> P(phi) - alpha P on polynomials of degree <= t (linear algebra oracle)."""
    cols = []
    for j in range(t + 1):
        mono = Polynomial.monomial(F, j)
        img = mono.compose(phi.as_polynomial()) - mono.scale(alpha)
        cols.append(list(img.coeffs) + [0] * (t + 1 - len(img)))
    M = np.array(cols, dtype=np.int64).T
    return kernel(F, M)


@pytest.mark.parametrize("pm", [(2, 2), (2, 4), (3, 2), (5, 2), (2, 6)])
def test_basis_spans_full_solution_space(pm):
    F = field_new(*pm)
    rng = np.random.default_rng(11)
    ells = sorted({F.p} | set(int(F.element_order(a)) for a in F.nonzero_elements() if a != 1))
    for ell in [e for e in ells if e <= 9]:
        phi = random_map(F, ell, rng)
        for d in range(1 if phi.is_shift else ell):
            alpha = phi.root_of_unity(d)
            for t in range(0, 2 * ell + 2):
                basis = invariant_space_basis(InvariantSpaceSpec(phi, alpha, t))
                K = _solution_space(F, phi, alpha, t)
                expected = (t // ell + 1) if phi.is_shift else ((t - d) // ell + 1 if t >= d else 0)
                assert len(basis) == expected == K.shape[0]
                if basis:
                    B = coefficient_matrix(basis, t + 1)
                    assert rank(F, B) == len(basis)
                    assert _same_row_space(F, B, K)


def test_shift_group_invariants_are_polynomials_in_subspace_polynomial():
    # every polynomial invariant under all shifts of an F_p-span G is Q(prod_g (z - g))
    from foldcodes.symmetry import shift_span, subspace_polynomial

    for pm, shifts in [((2, 4), (1, 2)), ((3, 3), (1, 3)), ((2, 5), (1, 2, 4)), ((2, 6), (3, 17))]:
        F = field_new(*pm)
        Pg = subspace_polynomial(F, shifts)
        size = len(shift_span(F, shifts))
        t = 3 * size
        blocks = [_solution_space(F, AffineMap(F, 1, s), 1, t) for s in shifts]
        # intersection of kernels = kernel of the stacked maps
        stacked = []
        for s in shifts:
            phi = AffineMap(F, 1, s)
            cols = []
            for j in range(t + 1):
                mono = Polynomial.monomial(F, j)
                img = mono.compose(phi.as_polynomial()) - mono
                cols.append(list(img.coeffs) + [0] * (t + 1 - len(img)))
            stacked.append(np.array(cols, dtype=np.int64).T)
        K = kernel(F, np.concatenate(stacked, axis=0))
        pred = coefficient_matrix([Pg ** k for k in range(t // size + 1)], t + 1)
        assert all(b.shape[0] >= K.shape[0] for b in blocks)
        assert _same_row_space(F, K, pred)


# -- power sums --------------------------------------------------------------------------------

def test_power_sum_examples():
    assert power_sum_residue(5, 2) == 0
    assert power_sum_residue(5, 4) == 4
    assert power_sum_residue(2, 1) == 1
    with pytest.raises(ValueError):
        power_sum_residue(5, -1)


@given(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19]), st.integers(0, 60))
def test_power_sum_brute_force(p, k):
    assert power_sum_residue(p, k) == sum(pow(s, k, p) for s in range(1, p)) % p
