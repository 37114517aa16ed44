"""Jacobi (2,2) machinery: evaluation, norms, expansions, the second-order operator."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothness_lab import (
    DOperatorParams,
    FunctionHandle,
    InvalidArgumentError,
    PolynomialRep,
    apply_D_func,
    apply_D_poly,
    expand_in_jacobi,
    fourier_jacobi_coeff,
    gauss_jacobi,
    jacobi_eval,
    jacobi_h,
    jacobi_matrix,
    jacobi_poly,
    jacobi_series_eval,
    make_grid,
    poly_lincomb,
)


def exact_h(n: int) -> Fraction:
    # squared (1-x^2)^2-weighted norm under the value-1-at-1 normalization
    raw = Fraction(32, 2 * n + 5) * Fraction(math.factorial(n + 2)) ** 2 / (
        Fraction(math.factorial(n)) * Fraction(math.factorial(n + 4))
    )
    lead = Fraction((n + 1) * (n + 2), 2)
    return raw / lead**2


@pytest.mark.parametrize("n", range(11))
def test_mode_norms_match_closed_form(n):
    assert jacobi_h(n) == pytest.approx(float(exact_h(n)), rel=1e-13)


def test_recurrence_normalized_at_one():
    for n in range(33):
        assert jacobi_eval(n, 2, 2, 1.0) == 1.0


def test_coefficient_form_normalized_at_one():
    # monomial coefficients are correctly rounded but reach ~7e8 by degree 32,
    # and the alternating sum at the endpoint is where cancellation peaks
    for n in range(17):
        assert jacobi_poly(n, 2, 2)(1.0) == pytest.approx(1.0, abs=1e-12)
    for n in range(17, 25):
        assert jacobi_poly(n, 2, 2)(1.0) == pytest.approx(1.0, abs=5e-10)
    assert jacobi_poly(32, 2, 2)(1.0) == pytest.approx(1.0, abs=5e-8)


@pytest.mark.parametrize("n", [8, 12, 16, 24])
def test_recurrence_and_coefficients_agree(n):
    grid = make_grid(64)
    poly = jacobi_poly(n, 2, 2)
    assert np.max(np.abs(poly(grid) - jacobi_eval(n, 2, 2, grid))) <= 1e-12


def test_degree_32_agreement_is_coefficient_limited():
    grid = make_grid(64)
    poly = jacobi_poly(32, 2, 2)
    drift = np.max(np.abs(poly(grid) - jacobi_eval(32, 2, 2, grid)))
    assert drift <= 5e-8


def test_orthogonality_on_gauss_rule():
    rule = gauss_jacobi(64, 2.0, 2.0)
    basis = jacobi_matrix(16, rule.nodes)
    gram = (basis * rule.weights[None, :]) @ basis.T
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) <= 1e-14
    assert np.allclose(np.diag(gram), [jacobi_h(k) for k in range(17)], rtol=1e-12)


def test_matrix_rows_match_pointwise_eval():
    xs = make_grid(17)
    m = jacobi_matrix(6, xs)
    assert m.shape == (7, 17)
    for n in (0, 3, 6):
        assert np.allclose(m[n], jacobi_eval(n, 2, 2, xs), atol=1e-14)


@pytest.mark.parametrize("n", range(17))
def test_eigenrelation(n):
    poly = jacobi_poly(n, 2, 2)
    image = apply_D_poly(poly)
    lam = -float(n * (n + 5))
    want = np.zeros(max(image.coeffs.size, poly.coeffs.size))
    want[: poly.coeffs.size] = lam * poly.coeffs
    got = np.zeros_like(want)
    got[: image.coeffs.size] = image.coeffs
    scale = max(1.0, np.max(np.abs(want)))
    assert np.max(np.abs(got - want)) <= 1e-12 * scale


@given(
    m=st.integers(1, 8),
    n=st.integers(1, 8),
    a=st.floats(-2.0, 2.0),
    b=st.floats(-2.0, 2.0),
)
@settings(max_examples=40, deadline=None)
def test_operator_is_linear_on_modes(m, n, a, b):
    pm, pn = jacobi_poly(m, 2, 2), jacobi_poly(n, 2, 2)
    combo = poly_lincomb([a, b], [pm, pn])
    image = apply_D_poly(combo)
    want = poly_lincomb([-a * m * (m + 5), -b * n * (n + 5)], [pm, pn])
    xs = make_grid(33)
    assert np.max(np.abs(image(xs) - want(xs))) <= 1e-9 * max(1.0, abs(a), abs(b))


def test_operator_on_function_handle():
    h = FunctionHandle(eval=lambda x: x * x, d1=lambda x: 2.0 * x, d2=lambda x: 2.0 + 0.0 * x)
    # (1-x^2) f'' - 6x f' at x = 0.3 for f = x^2
    assert apply_D_func(h, DOperatorParams(), 0.3) == pytest.approx(2.0 - 14.0 * 0.09, rel=1e-12)


def test_operator_point_domain():
    h = FunctionHandle(eval=lambda x: x, d1=lambda x: 1.0 + 0.0 * x, d2=lambda x: 0.0 * x)
    with pytest.raises(InvalidArgumentError):
        apply_D_func(h, DOperatorParams(), 1.0)


def test_mode_coefficient_recovers_norm():
    assert fourier_jacobi_coeff(jacobi_poly(5, 2, 2), 5) == pytest.approx(jacobi_h(5), rel=1e-12)
    assert fourier_jacobi_coeff(jacobi_poly(5, 2, 2), 3) == pytest.approx(0.0, abs=1e-15)


def test_expansion_roundtrip_and_convergence():
    f = lambda x: np.sin(3.0 * x)
    rule = gauss_jacobi(256, 2.0, 2.0)
    fv = f(rule.nodes)

    def residual(nmax):
        coeffs = expand_in_jacobi(f, nmax)
        sv = jacobi_series_eval(coeffs, rule.nodes)
        return math.sqrt(max(float(np.sum(rule.weights * (fv - sv) ** 2)), 0.0))

    r8, r16 = residual(8), residual(16)
    assert r16 <= r8 / 2.0
    coeffs = expand_in_jacobi(f, 20)
    grid = make_grid(65)
    assert np.max(np.abs(jacobi_series_eval(coeffs, grid) - f(grid))) <= 1e-10


def test_polynomial_rep_basics():
    p = PolynomialRep(np.array([2.0, 0.0, 0.0, 1.0]))  # x^3 + 2
    assert p.degree == 3
    d = p.derivative()
    assert np.allclose(d.coeffs, [0.0, 0.0, 3.0])
    assert p(0.5) == pytest.approx(2.125, rel=1e-15)
    assert not p.is_zero()
    assert PolynomialRep(np.array([0.0])).is_zero()


def test_lincomb_matches_manual_sum():
    polys = [jacobi_poly(k, 2, 2) for k in range(3)]
    combo = poly_lincomb([1.0, -2.0, 0.5], polys)
    xs = make_grid(9)
    manual = polys[0](xs) - 2.0 * polys[1](xs) + 0.5 * polys[2](xs)
    assert np.allclose(combo(xs), manual, atol=1e-14)


def test_degree_validation():
    with pytest.raises(InvalidArgumentError):
        jacobi_poly(-1, 2, 2)
    with pytest.raises(InvalidArgumentError):
        jacobi_h(-2)
    with pytest.raises(InvalidArgumentError):
        jacobi_eval(3, 2, 2, 1.5)
