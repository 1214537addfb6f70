"""Scanning the (footrule, rho) region, the similarity measure bracket and CSV/SVG export."""
import csv
import math
from dataclasses import dataclass

import numpy as np

from .bounds import attained_curve, lower_bound_curve, upper_estimate_curve
from .exceptions import DomainError
from .generators import GENERATORS, generate
from .measures import footrule, spearman_rho

CURVE_TOL = 1e-8
CSV_COLUMNS = ("phi", "rho", "source", "on_lower", "on_r")


@dataclass(frozen=True)
class RegionPoint:
    """A (footrule, rho) point of one copula, flagged against the bound curves."""

    phi: float
    rho: float
    source: str
    on_lower: bool
    on_r: bool

    @classmethod
    def of(cls, phi, rho, source, tol=CURVE_TOL):
        p = min(max(phi, -0.5), 1.0)
        try:
            r = attained_curve(p)
        except DomainError:
            # Beyond the last evaluated chord r and the upper estimate differ
            # by far less than the flag tolerance.
            r = upper_estimate_curve(p)
        return cls(float(phi), float(rho), source,
                   abs(rho - lower_bound_curve(p)) <= tol, abs(rho - r) <= tol)

    def violation(self, tol=CURVE_TOL):
        """Amount by which the point leaves the region between the bound curves, else 0."""
        p = min(max(self.phi, -0.5), 1.0)
        below = lower_bound_curve(p) - tol - self.rho
        above = self.rho - upper_estimate_curve(p) - tol
        outside = max(-0.5 - self.phi, self.phi - 1.0, 0.0)
        return max(below, above, outside, 0.0)


def point_of(c, source):
    return RegionPoint.of(footrule(c), spearman_rho(c), source)


def scan_region(count, seed=0, generators=None):
    """(footrule, rho) points from the named generators (all by default).

    Random generators draw ``count`` copulas each; parametric families are
    sampled on a grid of at most ``count`` parameter values.  Results depend
    only on ``count``, ``seed`` and the generator names.
    """
    if int(count) < 1:
        raise ValueError("count must be positive")
    names = sorted(GENERATORS) if generators is None else list(generators)
    points = []
    for name in names:
        for c, src in generate(name, int(count), seed):
            points.append(point_of(c, src))
    return points


def write_csv(points, path):
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            for p in points:
                w.writerow([repr(p.phi), repr(p.rho), p.source, int(p.on_lower), int(p.on_r)])
    except OSError as exc:
        raise OSError(f"cannot write CSV {path!r}: {exc}") from exc


def read_csv(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"cannot read CSV {path!r}: {exc}") from exc
    return [RegionPoint(float(r["phi"]), float(r["rho"]), r["source"],
                        r["on_lower"] == "1", r["on_r"] == "1") for r in rows]


# Similarity measure -------------------------------------------------------------

@dataclass(frozen=True)
class KsmBracket:
    """Bounds on the (footrule, rho) similarity measure ``1 - A / 3``.

    ``area_upper`` bounds the region area from above (upper estimate minus
    lower bound), giving ``lower``; ``area_lower`` uses the attained curve
    and gives ``upper``.
    """

    lower: float
    upper: float
    area_lower: float
    area_upper: float
    series_truncation: int
    tail_bound: float


#: ``(1 - phi(W)) (1 - rho(W)) = (3/2) * 2``.
KSM_DENOMINATOR = 3.0


def _lower_curve_integral():
    # int_{-1/2}^{1} (2 sqrt(3) / 9) (1 + 2x)^{3/2} - 1 dx
    return 2.0 * math.sqrt(3.0) / 9.0 * 3.0**2.5 / 5.0 - 1.5


def _upper_curve_integral():
    # int_{-1/2}^{1} 1 - (2/3)(1 - x)^2 dx
    return 1.5 - 2.0 / 9.0 * 1.5**3


def attained_curve_integral(truncation=10**5):
    """``int r`` over ``[-1/2, 1]`` and the bound on the truncated series tail.

    The cubic-root piece and the first chord are integrated in closed form.
    The chords over ``[1 - 3/(2n), 1 - 3/(2(n+1))]`` are trapezoids summed
    for ``n = 2..N``; the remaining pieces cover ``[1 - 3/(2(N+1)), 1]`` with
    heights in ``[1 - 3/(2(N+1)^2), 1]``, so their sum is that width up to
    ``(3/(2(N+1)))(3/(2(N+1)^2))``.
    """
    N = int(truncation)
    first = -3.0 / 64.0 - math.sqrt(3.0) / 9.0 * 0.75**2.5 / 5.0
    second = 9.0 / 64.0
    n = np.arange(2, N + 1, dtype=float)
    height = lambda k: 1.0 - 1.5 / k**2  # noqa: E731
    widths = 1.5 / n - 1.5 / (n + 1.0)
    series = math.fsum(0.5 * (height(n) + height(n + 1.0)) * widths)
    tail_width = 1.5 / (N + 1)
    tail_bound = tail_width * 1.5 / (N + 1) ** 2
    return first + second + series + tail_width, tail_bound


def compute_ksm(truncation=10**5):
    """Bracket of the (footrule, rho) similarity measure."""
    lower_int = _lower_curve_integral()
    area_upper = _upper_curve_integral() - lower_int
    r_int, tail = attained_curve_integral(truncation)
    area_lower = r_int - lower_int
    return KsmBracket(lower=1.0 - area_upper / KSM_DENOMINATOR,
                      upper=1.0 - area_lower / KSM_DENOMINATOR,
                      area_lower=area_lower, area_upper=area_upper,
                      series_truncation=int(truncation), tail_bound=tail)


# SVG ------------------------------------------------------------------------------

SVG_SIZE = 480
_MARGIN = 48
_CURVE_SAMPLES = 601


def _fmt(v):
    return f"{v:.3f}"


def _xy(phi, rho):
    span = SVG_SIZE - 2 * _MARGIN
    return (_MARGIN + (phi + 0.5) / 1.5 * span, SVG_SIZE - _MARGIN - (rho + 1.0) / 2.0 * span)


def _path(xs, ys):
    pts = [_xy(x, y) for x, y in zip(xs, ys)]
    return "M" + " L".join(f"{_fmt(a)},{_fmt(b)}" for a, b in pts)


def render_svg(points):
    """SVG text of the region: bound curves, attained curve and the points.

    The output depends only on the points' coordinates, so rerunning on the
    same CSV gives byte-identical files.  The attained curve is drawn solid
    and the upper estimate dashed.
    """
    xs = np.linspace(-0.5, 1.0, _CURVE_SAMPLES)
    lower = [lower_bound_curve(x) for x in xs]
    upper = [upper_estimate_curve(x) for x in xs]
    att = [attained_curve(x) for x in xs]
    x0, y0 = _xy(-0.5, -1.0)
    x1, y1 = _xy(1.0, 1.0)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" height="{_fmt(y0 - y1)}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    for phi in (-0.5, 0.0, 0.5, 1.0):
        x, _ = _xy(phi, -1.0)
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y0 + 16)}" font-size="11" '
                   f'text-anchor="middle">{phi:g}</text>')
    for rho in (-1.0, -0.5, 0.0, 0.5, 1.0):
        _, y = _xy(-0.5, rho)
        out.append(f'<text x="{_fmt(x0 - 6)}" y="{_fmt(y + 4)}" font-size="11" '
                   f'text-anchor="end">{rho:g}</text>')
    out.append(f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y0 + 34)}" font-size="12" '
               'text-anchor="middle">footrule</text>')
    out.append(f'<text x="14" y="{_fmt((y0 + y1) / 2)}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 14 {_fmt((y0 + y1) / 2)})">rho</text>')
    out.append(f'<path d="{_path(xs, lower)}" fill="none" stroke="black" stroke-width="1.5"/>')
    out.append(f'<path d="{_path(xs, att)}" fill="none" stroke="black" stroke-width="1.5"/>')
    out.append(f'<path d="{_path(xs, upper)}" fill="none" stroke="black" stroke-width="1" '
               'stroke-dasharray="5,4"/>')
    out.append('<g fill="steelblue" fill-opacity="0.5">')
    for p in points:
        x, y = _xy(p.phi, p.rho)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(points, path):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_svg(points))
    except OSError as exc:
        raise OSError(f"cannot write SVG {path!r}: {exc}") from exc
