"""Panel quadrature basics: exactness, adaptivity, failure modes."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wnl._quad import (
    integrate_adaptive,
    integrate_panels,
    integrate_uniform,
    panel_nodes,
)
from wnl.errors import QuadratureBudgetError


def test_weights_sum_to_length():
    nodes, weights = panel_nodes([0.0, 0.3, 1.7, 2.0], order=8)
    assert nodes.size == 24
    assert np.sum(weights) == pytest.approx(2.0, abs=1e-14)


def test_gl_exact_on_polynomials():
    # order-n GL integrates degree 2n-1 exactly
    f = lambda t: 7.0 * t**9 - 3.0 * t**4 + t
    val = integrate_panels(f, [-1.0, 1.0], order=5)
    assert val.real == pytest.approx(-6.0 / 5.0, abs=1e-13)
    assert val.imag == 0.0


def test_sin_integral():
    val = integrate_uniform(np.sin, 0.0, math.pi, panels=8, order=16)
    assert val.real == pytest.approx(2.0, abs=1e-14)


def test_oscillatory_adaptive():
    f = lambda t: np.exp(1j * 51.0 * t)
    val, err = integrate_adaptive(f, 0.0, math.pi, panels0=4, tol=1e-12)
    exact = 2j / 51.0
    assert abs(val - exact) < 1e-12
    assert err < 1e-12


def test_adaptive_budget_error_carries_estimate():
    f = lambda t: np.exp(1j * 4000.0 * t)
    with pytest.raises(QuadratureBudgetError) as info:
        integrate_adaptive(f, 0.0, math.pi, panels0=1, tol=1e-15, max_doublings=3)
    assert info.value.estimate is not None


@pytest.mark.parametrize("bad", [[0.0], [0.0, 0.0, 1.0], [0.0, 2.0, 1.0]])
def test_breakpoints_must_increase(bad):
    with pytest.raises(ValueError):
        integrate_panels(np.sin, bad, order=4)


@given(
    a=st.floats(-5.0, 5.0),
    width=st.floats(0.1, 10.0),
    panels=st.integers(1, 7),
)
def test_constant_integrates_to_width(a, width, panels):
    val = integrate_uniform(lambda t: np.ones_like(t), a, a + width, panels)
    assert val.real == pytest.approx(width, rel=1e-12)
