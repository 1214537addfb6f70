import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from footrule_rho.exceptions import QuadratureError
from footrule_rho.quadrature import integrate, integrate_2d, simpson_batch


@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4))
@settings(max_examples=50, deadline=None)
def test_cubics_are_exact(coef):
    p = np.polynomial.Polynomial(coef)
    exact = p.integ()(1.0) - p.integ()(0.0)
    assert_allclose(integrate(p), exact, atol=1e-12)


def test_smooth_integrand():
    assert_allclose(integrate(np.sin, 0.0, math.pi), 2.0, atol=1e-10)
    assert_allclose(integrate(np.exp), math.e - 1.0, atol=1e-10)


def test_kink_handled_with_and_without_breakpoint():
    f = lambda u: np.abs(u - 1.0 / 3.0)  # noqa: E731
    exact = (1 / 3) ** 2 / 2 + (2 / 3) ** 2 / 2
    assert_allclose(integrate(f, breaks=[1.0 / 3.0]), exact, atol=1e-14)
    assert_allclose(integrate(f), exact, atol=1e-10)


def test_batch_integrates_each_interval():
    a = np.array([0.0, 0.5, 1.0])
    b = np.array([1.0, 2.0, 1.0])
    out = simpson_batch(lambda x, own: x**4, a, b, 1e-12)
    assert_allclose(out, (b**5 - a**5) / 5.0, atol=1e-11)


def test_sqrt_endpoint_singularity():
    assert_allclose(integrate(np.sqrt), 2.0 / 3.0, atol=1e-10)


def test_jump_discontinuity_never_converges():
    with pytest.raises(QuadratureError):
        integrate(lambda u: (u > 1.0 / math.pi).astype(float), tol=1e-14)


def test_double_integrals():
    assert_allclose(integrate_2d(lambda u, v: u * v), 0.25, atol=1e-12)
    # int int min(u, v) = 1/3 with the kink line v = u declared
    got = integrate_2d(np.minimum, v_kinks=lambda u: u[:, None])
    assert_allclose(got, 1.0 / 3.0, atol=1e-10)
    # int int max(0, u + v - 1) = 1/6 without hints
    assert_allclose(integrate_2d(lambda u, v: np.maximum(0.0, u + v - 1.0)), 1 / 6, atol=1e-9)
