"""Weighted-space plumbing: admissibility windows, norms, grids."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothness_lab import (
    FunctionHandle,
    InvalidArgumentError,
    SpaceParams,
    jacobi_poly,
    make_grid,
    validate_params,
    weighted_norm,
)

P21 = SpaceParams(2.0, 1.0)


@pytest.mark.parametrize(
    "p,alpha,ok",
    [
        (1.0, 0.5, False),  # lower edge open
        (1.0, 0.75, True),
        (1.0, 1.0, True),  # upper edge closed
        (1.0, 1.0001, False),
        (2.0, 0.75, False),  # open interval for finite p > 1
        (2.0, 0.76, True),
        (2.0, 1.0, True),
        (2.0, 1.25, False),
        (4.0, 0.875, False),
        (4.0, 1.0, True),
        (4.0, 1.375, False),
        (math.inf, 0.999, False),
        (math.inf, 1.0, True),  # lower edge closed
        (math.inf, 1.49, True),
        (math.inf, 1.5, False),
    ],
)
def test_admissibility_table(p, alpha, ok):
    assert validate_params(p, alpha).admissible is ok


def test_admissibility_edges_reported():
    v = validate_params(1.0, 0.7)
    assert (v.lower, v.upper) == (0.5, 1.0)
    assert (v.lower_closed, v.upper_closed) == (False, True)
    v = validate_params(math.inf, 1.2)
    assert (v.lower, v.upper) == (1.0, 1.5)
    assert (v.lower_closed, v.upper_closed) == (True, False)
    assert "1" in v.interval()


def test_p_below_one_rejected():
    with pytest.raises(InvalidArgumentError):
        validate_params(0.5, 1.0)
    with pytest.raises(InvalidArgumentError):
        validate_params(0.999, 1.0)


def test_norm_of_x_in_l2():
    # int x^2 (1-x^2)^2 dx = 16/105
    assert weighted_norm(lambda x: x, P21) == pytest.approx(math.sqrt(16.0 / 105.0), rel=1e-13)


def test_norm_of_x_in_sup():
    # max |x|(1-x^2) sits at 1/sqrt(3); the grid resolves it to ~1e-3
    got = weighted_norm(lambda x: x, SpaceParams(math.inf, 1.0))
    assert got == pytest.approx(2.0 / (3.0 * math.sqrt(3.0)), rel=1e-3)


def test_norm_positive_homogeneous():
    f = lambda x: np.sin(3.0 * x)
    assert weighted_norm(lambda x: -2.5 * f(x), P21) == pytest.approx(2.5 * weighted_norm(f, P21), rel=1e-13)


def test_norm_zero_function():
    assert weighted_norm(lambda x: np.zeros_like(np.asarray(x, dtype=float)), P21) == 0.0


@given(
    c1=st.floats(-3.0, 3.0),
    c2=st.floats(-3.0, 3.0),
    n1=st.integers(0, 6),
    n2=st.integers(0, 6),
)
@settings(max_examples=60, deadline=None)
def test_triangle_inequality(c1, c2, n1, n2):
    f = jacobi_poly(n1, 2, 2)
    g = jacobi_poly(n2, 2, 2)
    fg = lambda x: c1 * f(x) + c2 * g(x)
    lhs = weighted_norm(fg, P21)
    rhs = weighted_norm(lambda x: c1 * f(x), P21) + weighted_norm(lambda x: c2 * g(x), P21)
    assert lhs <= rhs + 1e-10


@pytest.mark.parametrize("f", [lambda x: x, lambda x: np.abs(x), lambda x: np.sin(3.0 * x)])
def test_norm_monotone_in_alpha(f):
    # (1-x^2) <= 1, so a heavier weight exponent can only shrink the norm
    assert weighted_norm(f, SpaceParams(2.0, 1.2)) <= weighted_norm(f, SpaceParams(2.0, 0.8)) + 1e-12


def test_make_grid_shape_and_range():
    g = make_grid(33)
    assert g.shape == (33,)
    assert np.all(np.diff(g) > 0)
    assert g[0] > -1.0 and g[-1] < 1.0
    assert np.allclose(g, -g[::-1], atol=1e-15)


def test_function_handle_carries_derivatives():
    h = FunctionHandle(eval=lambda x: x * x, d1=lambda x: 2.0 * x, d2=lambda x: 2.0 + 0.0 * x, parity="even")
    assert h(0.5) == 0.25
    assert h.d1(0.5) == 1.0
    assert h.parity == "even"


def test_weighted_norm_accepts_handle():
    h = FunctionHandle(eval=lambda x: np.asarray(x, dtype=float))
    bare = weighted_norm(lambda x: x, P21)
    assert weighted_norm(h, P21) == pytest.approx(bare, rel=1e-15)
