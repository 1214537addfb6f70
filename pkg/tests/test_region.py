import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate

from footrule_rho import (PI, MixtureCopula, attained_curve, family_Ca, family_Cn, footrule,
                          lower_bound_curve, spearman_rho, upper_estimate_curve)
from footrule_rho.exceptions import DomainError
from footrule_rho.generators import GENERATORS
from footrule_rho.region import (RegionPoint, attained_curve_integral, compute_ksm, point_of,
                                 read_csv, render_svg, scan_region, write_csv, write_svg)


# Points ------------------------------------------------------------------------------

def test_region_point_flags():
    p = point_of(family_Ca(0.25), "Ca")
    assert p.on_lower and not p.on_r
    p = point_of(family_Cn(2), "C2")
    assert p.on_r and not p.on_lower
    p = point_of(PI, "Pi")
    assert not p.on_lower and not p.on_r
    assert p.violation() == 0.0


def test_region_point_violation():
    assert_allclose(RegionPoint.of(0.0, 0.5, "x").violation(tol=0.0), 0.5 - 1 / 3, atol=1e-15)
    assert_allclose(RegionPoint.of(0.0, -0.9, "x").violation(tol=0.0),
                    lower_bound_curve(0.0) + 0.9, atol=1e-15)
    assert_allclose(RegionPoint.of(1.2, 1.0, "x").violation(tol=0.0), 0.2, atol=1e-15)
    assert RegionPoint.of(0.25, 0.625, "x").violation() == 0.0


def test_region_point_next_to_one():
    # Beyond the last evaluated chord of r the flag falls back to the upper estimate.
    p = RegionPoint.of(1 - 1e-13, 1.0, "near-M")
    assert p.on_r and p.violation() == 0.0


def test_region_point_is_frozen():
    p = RegionPoint.of(0.0, 0.0, "x")
    with pytest.raises(AttributeError):
        p.rho = 1.0


# Scanning ----------------------------------------------------------------------------

def test_scan_is_deterministic_and_covers_generators():
    a = scan_region(20, seed=3)
    b = scan_region(20, seed=3)
    assert a == b
    prefixes = {p.source.split("#")[0].split("(")[0] for p in a}
    assert prefixes == set(GENERATORS)
    assert scan_region(20, seed=4) != a


def test_scan_order_of_generators_does_not_change_points():
    a = scan_region(10, seed=1, generators=["mixtures", "random-shuffle"])
    b = scan_region(10, seed=1, generators=["random-shuffle", "mixtures"])
    assert sorted(a, key=lambda p: p.source) == sorted(b, key=lambda p: p.source)


def test_scan_families_land_on_their_curves():
    for p in scan_region(101, generators=["family-Ca"]):
        assert p.on_lower, p
    cn = scan_region(20, generators=["family-Cn"])
    assert len(cn) == 20
    assert all(p.on_r for p in cn)


def test_scan_random_points_inside_region():
    for p in scan_region(200, seed=9, generators=["random-shuffle", "random-ds-shuffle",
                                                  "mixtures"]):
        assert p.violation() == 0.0, p


def test_scan_rejects_bad_arguments():
    with pytest.raises(DomainError):
        scan_region(5, generators=["nope"])
    with pytest.raises(ValueError):
        scan_region(0)


def test_mixture_points_are_convex_combinations():
    a, b = family_Ca(0.1), family_Cn(3)
    pa = np.array([footrule(a), spearman_rho(a)])
    pb = np.array([footrule(b), spearman_rho(b)])
    for t in (0.25, 0.5, 0.75):
        mix = MixtureCopula([(t, a), (1 - t, b)])
        assert_allclose([footrule(mix), spearman_rho(mix)], t * pa + (1 - t) * pb, atol=1e-10)


# Files -------------------------------------------------------------------------------

def test_csv_round_trip(tmp_path):
    pts = scan_region(15, seed=2)
    path = tmp_path / "pts.csv"
    write_csv(pts, path)
    assert read_csv(path) == pts
    assert path.read_text().splitlines()[0] == "phi,rho,source,on_lower,on_r"


def test_svg_is_byte_identical_on_rerun(tmp_path):
    pts = scan_region(15, seed=2)
    write_csv(pts, tmp_path / "a.csv")
    write_svg(read_csv(tmp_path / "a.csv"), tmp_path / "a.svg")
    write_csv(scan_region(15, seed=2), tmp_path / "b.csv")
    write_svg(read_csv(tmp_path / "b.csv"), tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
    text = render_svg(pts)
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert text.count("<circle") == len(pts)
    assert text.count("<path") == 3


def test_file_errors_are_reported(tmp_path):
    with pytest.raises(OSError):
        read_csv(tmp_path / "missing.csv")
    with pytest.raises(OSError):
        write_csv([], tmp_path / "no" / "dir.csv")


# Similarity measure bracket ------------------------------------------------------------

def test_curve_integrals_against_adaptive_quadrature():
    lo = integrate.quad(lower_bound_curve, -0.5, 1.0, epsabs=1e-13)[0]
    up = integrate.quad(upper_estimate_curve, -0.5, 1.0, epsabs=1e-13)[0]
    k = compute_ksm()
    assert_allclose(k.area_upper, up - lo, atol=1e-11)
    # r is integrated over its first pieces with breakpoints, the tail by the series.
    breaks = [-0.125, 0.25] + [1 - 1.5 / n for n in range(3, 400)]
    head = integrate.quad(attained_curve, -0.5, 1 - 1.5 / 400, points=breaks, limit=1000,
                          epsabs=1e-13)[0]
    r_int, _ = attained_curve_integral()
    n = np.arange(400, 10**5 + 1, dtype=float)
    widths = 1.5 / n - 1.5 / (n + 1)
    tail = math.fsum(0.5 * (2 - 1.5 / n**2 - 1.5 / (n + 1) ** 2) * widths) + 1.5 / (10**5 + 1)
    assert_allclose(r_int, head + tail, atol=1e-10)


def test_ksm_bracket():
    k = compute_ksm()
    assert k.tail_bound < 1e-9
    assert 0.0 < k.lower < k.upper < 1.0
    assert k.area_lower < k.area_upper
    coarse = compute_ksm(10**4)
    assert abs(coarse.upper - k.upper) <= (coarse.tail_bound + k.tail_bound) / 3

