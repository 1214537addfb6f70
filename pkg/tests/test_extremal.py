import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from footrule_rho import (M, PI, W, MixtureCopula, OrdinalSum, ShuffleOfM, SymmetricDiagonal,
                          alpha0_envelope, attained_curve, attaining_copula, check_copula,
                          diagonal_copula, family_Ca, family_Cn, footrule,
                          is_doubly_symmetric_shuffle, kdelta_a, lower_bound_curve,
                          ordinal_sum, smooth_diagonal, spearman_rho, sup_distance,
                          two_diagonal_from_delta, upper_estimate_curve,
                          verify_diagonal_identities)
from footrule_rho.bounds import attained_piece_index
from footrule_rho.exceptions import DomainError, InvalidCopulaError, InvalidDiagonalError
from footrule_rho.extremal import IDENTITY_DIAGONAL, delta_a, monotone_inverse

GRID = np.linspace(0.0, 1.0, 201)
UU, VV = np.meshgrid(GRID, GRID, indexing="ij")


# Families -----------------------------------------------------------------------

def test_family_ca_endpoints_and_quarter():
    assert family_Ca(0.0) is M and family_Ca(0.5) is W
    c = family_Ca(0.25)
    assert_allclose([footrule(c), spearman_rho(c)], [-0.125, -0.75], atol=1e-14)
    assert_allclose(lower_bound_curve(-0.125), -0.75, atol=1e-14)


def test_family_ca_on_lower_curve_for_101_parameters():
    for a in np.linspace(0.0, 0.5, 101):
        c = family_Ca(float(a))
        assert abs(spearman_rho(c) - lower_bound_curve(footrule(c))) <= 1e-10
        assert check_copula(c)
        if 0 < a < 0.5:
            # n = 3 is odd, so C_a is doubly symmetric as a surface, not as a shuffle.
            assert is_doubly_symmetric_shuffle(c).clause == "i"
            assert_allclose(c.cdf(UU, VV), c.cdf(VV, UU), atol=1e-12)
            assert_allclose(c.cdf(UU, VV), UU + VV - 1 + c.cdf(1 - UU, 1 - VV), atol=1e-12)


def test_family_ca_domain():
    for a in (-0.1, 0.6):
        with pytest.raises(DomainError):
            family_Ca(a)


def test_family_cn_examples():
    for n, phi, rho in ((1, -0.5, -0.5), (2, 0.25, 0.625), (3, 0.5, 5 / 6)):
        c = family_Cn(n)
        assert_allclose([footrule(c), spearman_rho(c)], [phi, rho], atol=1e-14)
    assert_allclose(upper_estimate_curve(0.5), 5 / 6, atol=1e-14)


def test_family_cn_on_upper_curve_up_to_50():
    for n in range(1, 51):
        c = family_Cn(n)
        phi, rho = footrule(c), spearman_rho(c)
        assert abs(rho - upper_estimate_curve(phi)) <= 1e-10
        assert abs(attained_curve(1 - 1.5 / n) - rho) <= 1e-10
        assert is_doubly_symmetric_shuffle(c)


@pytest.mark.parametrize("n", [0, -1, 2.5])
def test_family_cn_domain(n):
    with pytest.raises(DomainError):
        family_Cn(n)


# Symmetric diagonals ---------------------------------------------------------------

@pytest.mark.parametrize("points", [
    [(0, 0), (0.5, 0.6), (1, 1)],                 # above u
    [(0, 0), (0.5, 0.0), (0.75, 0.0), (1, 1)],    # slope 4 > 2
    [(0, 0), (0.3, 0.2), (1, 1)],                 # breaks the symmetry identity
    [(0.1, 0), (1, 1)],                           # does not start at 0
])
def test_invalid_diagonals_rejected(points):
    with pytest.raises(InvalidDiagonalError):
        SymmetricDiagonal.piecewise_linear(points)


@given(st.floats(0.01, 0.99))
@settings(max_examples=40, deadline=None)
def test_smooth_diagonal_properties(s):
    d = smooth_diagonal(s)
    u = np.linspace(0, 1, 501)
    assert np.all((d.derivative(u) > 1 - s - 1e-12) & (d.derivative(u) < 1 + s + 1e-12))
    assert_allclose(d(u), 2 * u - 1 + d(1 - u), atol=1e-12)
    assert_allclose(d.alpha(1.0), 0.5 - 2 * s / math.pi**2, atol=1e-15)


def test_smooth_diagonal_examples():
    d = smooth_diagonal(0.5)
    assert_allclose(d.alpha(1.0), 0.5 - 1 / math.pi**2, atol=1e-15)
    assert_allclose(6 * d.alpha(1.0) - 2, 1 - 6 / math.pi**2, atol=1e-14)
    assert_allclose(footrule(diagonal_copula(d)), 1 - 6 / math.pi**2, atol=1e-9)
    u = np.linspace(0, 1, 101)
    assert_allclose(smooth_diagonal(1e-9)(u), u, atol=1e-9)
    for s in (0.0, 1.0):
        with pytest.raises(DomainError):
            smooth_diagonal(s)


def test_monotone_inverse_is_lower_inverse():
    d = delta_a(0.25)
    # delta is 0 on [0, 1/4], so the lower inverse of 0 is 0
    assert monotone_inverse(d, 0.0) <= 1e-15
    assert_allclose(monotone_inverse(d, 0.25), 0.5, atol=1e-15)


# Two-diagonal copulas -----------------------------------------------------------------

def test_two_diagonal_examples():
    c = two_diagonal_from_delta(SymmetricDiagonal.from_half([(0, 0), (0.5, 0.5)]))
    assert_allclose(c.cdf(UU, VV), M.cdf(UU, VV), atol=1e-15)
    c = two_diagonal_from_delta(delta_a(0.25))
    assert sup_distance(c, family_Ca(0.25), 200) <= 1e-12


def test_two_diagonal_rejects_steep_half():
    d = SymmetricDiagonal.from_half([(0, 0), (0.25, 0.0), (0.5, 0.4)])
    with pytest.raises(InvalidDiagonalError):
        two_diagonal_from_delta(d)


def test_two_diagonal_from_reduced_shuffles_matches_shuffle():
    from footrule_rho import approx_doubly_symmetric, diagonal_section, reduce_to_diagonals
    final, _ = reduce_to_diagonals(approx_doubly_symmetric(PI, 8))
    d = SymmetricDiagonal.from_section(diagonal_section(final))
    c = two_diagonal_from_delta(d)
    assert_allclose(c.cdf(UU, VV), final.cdf(UU, VV), atol=1e-10)
    assert check_copula(c)
    assert_allclose(c.cdf(UU, VV), c.cdf(VV, UU), atol=1e-12)
    assert_allclose(c.cdf(UU, VV), UU + VV - 1 + c.cdf(1 - UU, 1 - VV), atol=1e-12)


# Diagonal copulas ------------------------------------------------------------------

def test_diagonal_copula_examples():
    assert_allclose(diagonal_copula(IDENTITY_DIAGONAL).cdf(UU, VV), M.cdf(UU, VV), atol=0)
    k = kdelta_a(0.25)
    assert_allclose([footrule(k), spearman_rho(k)], [-0.125, 0.125], atol=1e-9)
    k = kdelta_a(0.5)
    assert_allclose([footrule(k), spearman_rho(k)], [-0.5, -0.5], atol=1e-9)


def test_diagonal_copula_rejects_non_diagonal():
    with pytest.raises(InvalidDiagonalError):
        diagonal_copula(lambda u: u)


@pytest.mark.parametrize("delta", [delta_a(0.3), smooth_diagonal(0.7), IDENTITY_DIAGONAL,
                                   SymmetricDiagonal.from_half([(0, 0), (0.2, 0.05), (0.5, 0.2)])])
def test_diagonal_copula_is_valid_and_has_diagonal(delta):
    k = diagonal_copula(delta)
    assert check_copula(k)
    assert_allclose(k.cdf(GRID, GRID), delta(GRID), atol=1e-15)
    assert_allclose(k.cdf(UU, VV), k.cdf(VV, UU), atol=0)


def test_kdelta_a_closed_forms_and_rho_phi_relation():
    for a in (0.25, 0.3125, 0.375, 0.4375, 0.5):
        k = kdelta_a(a)
        phi, rho = footrule(k), spearman_rho(k)
        assert abs(rho - (8 * a**3 - 6 * a + 1.5)) <= 1e-6
        s = 1 + 2 * phi
        assert abs(rho - (-0.5 + s - math.sqrt(3) / 9 * s**1.5)) <= 1e-6


def test_diagonal_copulas_respect_upper_estimate():
    rng = np.random.default_rng(40)
    diags = [smooth_diagonal(s) for s in (0.1, 0.4, 0.8)]
    for _ in range(5):
        # random increasing 1-Lipschitz half-diagonal
        knots = np.sort(rng.uniform(0, 0.5, 3))
        slopes = rng.uniform(0, 1, 4)
        u = np.concatenate([[0], knots, [0.5]])
        vals = np.concatenate([[0], np.cumsum(slopes * np.diff(u))])
        vals *= min(1.0, 0.5 / vals[-1]) if vals[-1] > 0 else 1.0
        diags.append(SymmetricDiagonal.from_half(list(zip(u, vals))))
    for d in diags:
        k = diagonal_copula(d)
        phi, rho = footrule(k), spearman_rho(k)
        assert rho <= upper_estimate_curve(phi) + 1e-6


# Ordinal sums ------------------------------------------------------------------

def test_ordinal_sum_examples():
    s = family_Cn(1)
    assert sup_distance(ordinal_sum([(0, 1)], [s]), s, 100) == 0.0
    for n in (2, 3, 5):
        iv = [(k / n, (k + 1) / n) for k in range(n)]
        assert sup_distance(ordinal_sum(iv, [s] * n), family_Cn(n), 200) <= 1e-12
    c = ordinal_sum([(0, 0.5), (0.5, 1)], [W, W])
    assert_allclose(spearman_rho(c), 0.5, atol=1e-14)


def test_ordinal_sum_rho_formula_for_shuffles():
    rng = np.random.default_rng(41)
    from footrule_rho.generators import random_shuffle
    for _ in range(20):
        cuts = np.sort(rng.uniform(0, 1, 4))
        iv = [(cuts[0], cuts[1]), (cuts[2], cuts[3])]
        comps = [random_shuffle(rng, 6) for _ in iv]
        c = ordinal_sum(iv, comps)
        assert isinstance(c, ShuffleOfM)
        expected = 1 - sum((b - a) ** 3 * (1 - spearman_rho(k)) for (a, b), k in zip(iv, comps))
        assert_allclose(spearman_rho(c), expected, atol=1e-12)


def test_ordinal_sum_of_non_shuffles():
    c = ordinal_sum([(0.1, 0.4), (0.5, 0.9)], [PI, kdelta_a(0.3)])
    assert isinstance(c, OrdinalSum)
    assert check_copula(c)
    outside = (UU <= 0.1) | (VV <= 0.1) | ((UU >= 0.4) & (VV <= 0.5)) | (UU >= 0.9)
    assert_allclose(c.cdf(UU, VV)[outside], np.minimum(UU, VV)[outside], atol=1e-15)
    expected = 1 - 0.3**3 * (1 - 0.0) - 0.4**3 * (1 - spearman_rho(kdelta_a(0.3)))
    assert_allclose(spearman_rho(c), expected, atol=1e-7)


def test_ordinal_sum_overlap_rejected():
    with pytest.raises(InvalidCopulaError):
        ordinal_sum([(0, 0.6), (0.5, 1)], [M, W])


# Bound curves ----------------------------------------------------------------------

def test_lower_curve_examples():
    assert_allclose(lower_bound_curve(-0.5), -1.0, atol=1e-15)
    assert_allclose(lower_bound_curve(1.0), 1.0, atol=1e-15)
    assert_allclose(lower_bound_curve(-0.125), -0.75, atol=1e-15)


def test_upper_curve_examples():
    assert upper_estimate_curve(1.0) == 1.0
    assert_allclose(upper_estimate_curve(0.25), 0.625, atol=1e-15)
    assert_allclose(upper_estimate_curve(0.0), 1 / 3, atol=1e-15)
    assert_allclose(upper_estimate_curve(-0.5), -0.5, atol=1e-15)


def test_attained_curve_examples():
    assert_allclose(attained_curve(-0.125), 0.125, atol=1e-15)
    assert_allclose(attained_curve(0.25), 0.625, atol=1e-15)
    assert_allclose(attained_curve(0.5), 5 / 6, atol=1e-15)
    assert attained_curve(1.0) == 1.0


@pytest.mark.parametrize("f", [lower_bound_curve, upper_estimate_curve, attained_curve])
def test_curves_reject_out_of_range(f):
    for x in (-0.6, 1.1):
        with pytest.raises(DomainError):
            f(x)


def test_curve_ordering_and_monotonicity():
    xs = np.linspace(-0.5, 1.0, 1001)
    lo = np.array([lower_bound_curve(x) for x in xs])
    r = np.array([attained_curve(x) for x in xs])
    up = np.array([upper_estimate_curve(x) for x in xs])
    assert np.all(lo <= r + 1e-15) and np.all(r <= up + 1e-15)
    assert np.all(np.diff(r) >= 0)


def test_attained_curve_touches_upper_only_at_cn_points():
    for n in range(2, 40):
        x = 1 - 1.5 / n
        assert_allclose(attained_curve(x), upper_estimate_curve(x), atol=1e-14)
        mid = 1 - 0.75 / n - 0.75 / (n + 1)
        assert attained_curve(mid) < upper_estimate_curve(mid)


def test_attained_curve_continuity_at_piece_boundaries():
    eps = 1e-13
    for x in [-0.125, 0.25] + [1 - 1.5 / n for n in range(3, 60)]:
        assert abs(attained_curve(x - eps) - attained_curve(x + eps)) <= 1e-12
    assert abs(attained_curve(1 - 2e-6) - 1.0) <= 1e-5


def test_attained_piece_index_brackets():
    for x in np.linspace(0.25, 0.999, 300):
        n = attained_piece_index(x)
        assert 1 - 1.5 / n <= x < 1 - 1.5 / (n + 1)
    with pytest.raises(DomainError):
        attained_piece_index(0.1)
    with pytest.raises(DomainError):
        attained_piece_index(1 - 1e-9)
    with pytest.raises(DomainError):
        attained_piece_index(1 - 1e-15)


def test_alpha0_envelope_examples():
    assert_allclose(alpha0_envelope(0.5, 1.0), 0.125, atol=1e-15)
    assert np.all(alpha0_envelope(np.linspace(0, 0.5, 11), -0.5) == 0.0)
    for p in np.linspace(-0.5, 1, 13):
        assert_allclose(alpha0_envelope(0.5, p), (2 * p + 1) / 24, atol=1e-15)
    with pytest.raises(DomainError):
        alpha0_envelope(0.7, 0.0)


def test_attainment_realizes_every_curve_point():
    for x in np.concatenate([np.linspace(-0.5, 1.0, 61), [0.26, 0.61, 0.9]]):
        c = attaining_copula(float(x))
        assert abs(footrule(c) - x) <= 1e-8
        assert abs(spearman_rho(c) - attained_curve(float(x))) <= 1e-8


# Diagonal identities -----------------------------------------------------------------

def test_identities_for_identity_diagonal():
    rep = verify_diagonal_identities(IDENTITY_DIAGONAL)
    assert max(rep.residuals.values()) <= 1e-12
    assert_allclose(rep.double_integral, 1 / 3, atol=1e-12)


def test_identities_smooth_slack():
    rep = verify_diagonal_identities(smooth_diagonal(0.9), tol=1e-7)
    assert rep.ok and rep.h_slack > 0


def test_identities_reject_flat_diagonal():
    with pytest.raises(InvalidDiagonalError):
        verify_diagonal_identities(delta_a(0.25))


def test_identities_on_piecewise_linear_strictly_increasing():
    d = SymmetricDiagonal.from_half([(0, 0), (0.2, 0.05), (0.5, 0.2)])
    rep = verify_diagonal_identities(d, tol=1e-7)
    assert rep.ok, rep.residuals


def test_mixture_of_attaining_points_is_affine():
    a, b = attaining_copula(-0.3), attaining_copula(0.7)
    mix = MixtureCopula([(0.25, a), (0.75, b)])
    assert_allclose(footrule(mix), 0.25 * -0.3 + 0.75 * 0.7, atol=1e-8)
