from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from foldcodes.codes import (
    CodeSpec,
    LinearCode,
    alternant_code,
    alternant_dual,
    code_equal,
    goppa_code,
    goppa_dual,
    grs_code,
    grs_dual_multiplier,
    grs_rows,
    orthogonal,
    permute_code,
    subfield_subcode,
    trace_code,
)
from foldcodes.field import field_new, view_for
from foldcodes.poly import Polynomial, poly_gcd

from ._util import brute_kernel_rows, random_multiplier, random_poly, random_support

VIEWS = [((2, 3), 2), ((2, 4), 2), ((2, 4), 4), ((3, 2), 3), ((2, 6), 4), ((2, 6), 8), ((3, 4), 9), ((5, 2), 5)]


# -- LinearCode ------------------------------------------------------------------------------

def test_canonical_form_is_unique():
    F = field_new(3, 1)
    a = LinearCode(F, [[1, 2, 0, 1], [0, 1, 1, 1]])
    b = LinearCode(F, [[1, 0, 1, 2], [2, 1, 0, 2], [0, 2, 2, 2]])
    assert a == b and a.k == 2
    assert a.generator.tolist() == [[1, 0, 1, 2], [0, 1, 1, 1]]


def test_full_zero_and_dual():
    F = field_new(2, 2)
    assert LinearCode.full(F, 4).dual() == LinearCode.zero(F, 4)
    assert LinearCode.zero(F, 4).dual() == LinearCode.full(F, 4)
    C = LinearCode(F, [[1, 1, 1, 1]])
    assert C.dual().k == 3
    assert orthogonal(C, C.dual())


def test_generator_is_read_only():
    C = LinearCode(field_new(2, 1), [[1, 1]])
    with pytest.raises(ValueError):
        C.generator[0, 0] = 0


def test_length_mismatch_errors():
    F = field_new(2, 1)
    with pytest.raises(ValueError):
        code_equal(LinearCode(F, [[1, 1]]), LinearCode(F, [[1, 1, 1]]))
    with pytest.raises(ValueError):
        code_equal(LinearCode(F, [[1, 1]]), LinearCode(field_new(3, 1), [[1, 1]]))
    with pytest.raises(ValueError):
        LinearCode(F, [[1, 1]], n=3)


def test_permute_code():
    F = field_new(2, 1)
    C = LinearCode(F, [[1, 1, 0]])
    assert permute_code(C, [2, 0, 1]) == LinearCode(F, [[0, 1, 1]])
    with pytest.raises(ValueError):
        permute_code(C, [0, 0, 1])


@given(st.integers(0, 2 ** 31))
def test_dual_is_involution_and_dimensions_add(seed):
    rng = np.random.default_rng(seed)
    F = field_new(*[(2, 1), (3, 1), (2, 2), (5, 1)][seed % 4])
    n = int(rng.integers(1, 9))
    C = LinearCode(F, rng.integers(0, F.order, (int(rng.integers(0, n + 2)), n)), n)
    D = C.dual()
    assert C.k + D.k == n
    assert D.dual() == C
    assert orthogonal(C, D)


# -- GRS ---------------------------------------------------------------------------------------

def test_grs_parameter_errors():
    F = field_new(2, 3)
    with pytest.raises(ValueError):
        grs_code(F, 0, [1, 2, 3], [1, 1, 1])
    with pytest.raises(ValueError):
        grs_code(F, 3, [1, 2, 3], [1, 1, 1])
    with pytest.raises(ValueError):
        grs_code(F, 1, [1, 1, 3], [1, 1, 1])
    with pytest.raises(ValueError):
        grs_code(F, 1, [1, 2, 3], [1, 0, 1])
    with pytest.raises(ValueError):
        grs_code(F, 1, [1, 2, 3], [1, 1])
    with pytest.raises(ValueError):
        grs_code(F, 1, [1, 2, 9], [1, 1, 1])


def test_grs_is_mds():
    F = field_new(2, 4)
    rng = np.random.default_rng(0)
    for k in range(1, 8):
        x = random_support(F, 8, rng)
        C = grs_code(F, k, x, random_multiplier(F, 8, rng))
        assert C.k == k
        # MDS: every k columns of a generator are independent
        for _ in range(5):
            cols = rng.choice(8, k, replace=False)
            assert LinearCode(F, C.generator[:, cols]).k == k


@pytest.mark.parametrize("pm", [(2, 3), (2, 4), (3, 2), (5, 2), (7, 1)])
def test_grs_dual_closed_form_matches_kernel(pm):
    F = field_new(*pm)
    rng = np.random.default_rng(sum(pm))
    for _ in range(10):
        n = int(rng.integers(2, F.order + 1))
        k = int(rng.integers(1, n))
        x = random_support(F, n, rng)
        y = random_multiplier(F, n, rng)
        C = grs_code(F, k, x, y)
        z = grs_dual_multiplier(F, k, x, y)
        assert C.dual() == grs_code(F, n - k, x, z)
        assert orthogonal(C, grs_code(F, n - k, x, z))


def test_grs_rows_beyond_n():
    F = field_new(2, 2)
    rows = grs_rows(F, 6, [0, 1, 2, 3], [1, 1, 1, 1])
    assert rows.shape == (6, 4)
    assert LinearCode(F, rows).k == 4


# -- subfield subcodes, trace codes and alternant codes ------------------------------------------

def test_alternant_brute_force_oracle():
    for (pm, q) in [((2, 3), 2), ((2, 4), 2), ((2, 4), 4), ((3, 2), 3)]:
        F = field_new(*pm)
        view = view_for(F, q)
        rng = np.random.default_rng(q + F.order)
        for _ in range(6):
            n = int(rng.integers(2, min(F.order, 7 if q == 2 else 5) + 1))
            r = int(rng.integers(0, n + 1))
            x = random_support(F, n, rng)
            y = random_multiplier(F, n, rng)
            A = alternant_code(r, x, y, view)
            brute = brute_kernel_rows(view.small, grs_rows(F, r, x, y), view, n)
            assert A == LinearCode(view.small, np.array(brute).reshape(-1, n), n)


def test_alternant_degree_bounds():
    F = field_new(2, 4)
    view = view_for(F, 2)
    rng = np.random.default_rng(5)
    x = random_support(F, 12, rng)
    y = random_multiplier(F, 12, rng)
    assert alternant_code(0, x, y, view) == LinearCode.full(view.small, 12)
    for r in range(1, 4):
        assert alternant_code(r, x, y, view).k >= 12 - 4 * r
    assert alternant_code(12, x, y, view).k == 0
    with pytest.raises(ValueError):
        alternant_code(-1, x, y, view)


@pytest.mark.parametrize("pm,q", VIEWS)
def test_trace_dual_agrees_with_subfield_subcode(pm, q):
    # the dual of the subfield subcode equals the trace code of the dual
    F = field_new(*pm)
    view = view_for(F, q)
    rng = np.random.default_rng(F.order * q)
    for _ in range(8):
        n = int(rng.integers(2, min(F.order, 20) + 1))
        r = int(rng.integers(1, n))
        x = random_support(F, n, rng)
        y = random_multiplier(F, n, rng)
        A = alternant_code(r, x, y, view)
        assert alternant_dual(r, x, y, view) == A.dual()
        C = grs_code(F, n - r, x, grs_dual_multiplier(F, r, x, y))
        assert subfield_subcode(C, view) == A
        assert trace_code(C.dual(), view) == A.dual()


def test_trace_code_of_field_code_is_itself():
    F = field_new(3, 2)
    view = view_for(F, 9)
    C = LinearCode(F, [[1, 2, 3, 4], [0, 5, 6, 7]])
    assert trace_code(C, view) == C
    assert subfield_subcode(C, view) == C


def test_view_mismatch_errors():
    F = field_new(2, 4)
    C = LinearCode(field_new(2, 3), [[1, 1]])
    with pytest.raises(ValueError):
        subfield_subcode(C, view_for(F, 2))
    with pytest.raises(ValueError):
        trace_code(C, view_for(F, 2))


@pytest.mark.parametrize("pm,q", VIEWS)
def test_alternant_invariant_under_affine_change(pm, q):
    # A_r(x, y) = A_r(a x + b, y) for a != 0
    F = field_new(*pm)
    view = view_for(F, q)
    rng = np.random.default_rng(3 * F.order + q)
    for _ in range(6):
        n = int(rng.integers(2, min(F.order, 16) + 1))
        r = int(rng.integers(1, n))
        x = random_support(F, n, rng)
        y = random_multiplier(F, n, rng)
        a = int(rng.integers(1, F.order))
        b = int(rng.integers(0, F.order))
        x2 = F.add(F.mul(x, a), b)
        assert alternant_code(r, x, y, view) == alternant_code(r, x2, y, view)
        c = int(rng.integers(1, F.order))
        assert alternant_code(r, x, y, view) == alternant_code(r, x, F.mul(y, c), view)


# -- Goppa codes ---------------------------------------------------------------------------------

def test_goppa_rejects_root_on_support():
    F = field_new(2, 4)
    view = view_for(F, 2)
    g = Polynomial.from_roots(F, [3, 5])
    with pytest.raises(ValueError):
        goppa_code([1, 2, 3], g, view)
    with pytest.raises(ValueError):
        goppa_code([1, 2], Polynomial.zero(F), view)
    assert goppa_code([1, 2, 4, 6], g, view).n == 4


def test_binary_goppa_squarefree_doubling():
    # for squarefree gamma over characteristic 2: G(x, gamma) = G(x, gamma^2)
    F = field_new(2, 5)
    view = view_for(F, 2)
    rng = np.random.default_rng(9)
    checked = 0
    while checked < 6:
        g = random_poly(F, int(rng.integers(1, 4)), rng, monic=True)
        if g.derivative().is_zero() or poly_gcd(g, g.derivative()).degree > 0:
            continue
        x = np.array([v for v in F.elements() if g(int(v)) != 0][:20])
        assert goppa_code(x, g, view) == goppa_code(x, g * g, view)
        assert goppa_dual(x, g, view) == goppa_code(x, g, view).dual()
        checked += 1


def test_codespec_validation():
    F = field_new(2, 4)
    view = view_for(F, 2)
    with pytest.raises(ValueError):
        CodeSpec("goppa", view, (1, 2, 3), 1)
    with pytest.raises(ValueError):
        CodeSpec("alternant", view, (1, 2, 3), 1)
    with pytest.raises(ValueError):
        CodeSpec("bogus", view, (1, 2, 3), 1, multiplier=(1, 1, 1))
    g = Polynomial(F, [1, 1, 1])
    with pytest.raises(ValueError):
        CodeSpec("goppa", view, (1, 2, 3), 3, goppa=g)
    spec = CodeSpec("goppa", view, (0, 1, 4, 8), 2, goppa=Polynomial(F, [2, 0, 1]))
    assert spec.dual_code() == spec.code().dual()
    grs = CodeSpec("grs", view, (0, 1, 2), 2, multiplier=(1, 1, 1))
    assert grs.code().k == 2 and grs.dual_code().k == 1
