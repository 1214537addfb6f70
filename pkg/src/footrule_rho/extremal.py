"""Extremal constructions in the (footrule, rho) plane.

Closed-form shuffle families, copulas determined by a diagonal section
(two-diagonal copulas and diagonal copulas ``K_delta``), ordinal sums, the
copulas attaining the curve ``r`` and a numerical check of the integral
identities satisfied by smooth symmetric diagonals.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .bounds import (alpha0_envelope, attained_curve, attained_piece_index,  # noqa: F401
                     lower_bound_curve, upper_estimate_curve)
from .copulas import ATOL, M, W, Copula, MixtureCopula, ShuffleOfM
from .exceptions import DomainError, InvalidCopulaError, InvalidDiagonalError

BISECTION_STEPS = 60
_TOL = 1e-12


def monotone_inverse(f, y, lo=0.0, hi=1.0, steps=BISECTION_STEPS):
    """Smallest ``t`` in ``[lo, hi]`` with ``f(t) >= y`` for nondecreasing ``f``.

    Vectorized bisection; 60 halvings resolve ``t`` to below one ulp on the
    unit interval.
    """
    y = np.asarray(y, dtype=float)
    a = np.full(y.shape, float(lo))
    b = np.full(y.shape, float(hi))
    for _ in range(steps):
        m = 0.5 * (a + b)
        up = np.asarray(f(m)) >= y
        b = np.where(up, m, b)
        a = np.where(up, a, m)
    out = b
    return float(out) if out.ndim == 0 else out


# Symmetric diagonals ----------------------------------------------------------

class SymmetricDiagonal:
    """A diagonal ``delta`` with ``delta(u) = 2u - 1 + delta(1 - u)``.

    Either piecewise linear (``knots`` and ``values``) or given by callables.
    Use :meth:`piecewise_linear` or :meth:`smooth` rather than the
    constructor.
    """

    def __init__(self, func, derivative=None, alpha=None, knots=None, values=None,
                 breaks=(), label="diagonal", params=None):
        self._func = func
        self.params = params
        self._derivative = derivative
        self._alpha = alpha
        self.knots = None if knots is None else np.asarray(knots, dtype=float)
        self.values = None if values is None else np.asarray(values, dtype=float)
        self._breaks = np.asarray(breaks, dtype=float)
        self.label = label

    @classmethod
    def piecewise_linear(cls, points, validate=True, label="piecewise-linear"):
        """Diagonal interpolating ``(u, delta(u))`` pairs that include 0 and 1."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise InvalidDiagonalError("expected a list of (u, value) pairs")
        order = np.argsort(pts[:, 0], kind="stable")
        u, val = pts[order, 0], pts[order, 1]
        if np.any(np.diff(u) <= 0.0):
            raise InvalidDiagonalError("diagonal knots must be distinct")
        if abs(u[0]) > _TOL or abs(u[-1] - 1.0) > _TOL:
            raise InvalidDiagonalError("diagonal knots must span [0, 1]")
        u[0], u[-1] = 0.0, 1.0
        slopes = np.diff(val) / np.diff(u)
        d = cls(lambda t: np.interp(t, u, val),
                derivative=lambda t: slopes[np.clip(
                    np.searchsorted(u, t, side="right") - 1, 0, slopes.size - 1)],
                knots=u, values=val, breaks=u[1:-1], label=label)
        if validate:
            d.validate()
        return d

    @classmethod
    def from_half(cls, points, validate=True):
        """Diagonal given on ``[0, 1/2]`` and extended by the symmetry identity."""
        pts = np.asarray(points, dtype=float)
        pts = pts[np.argsort(pts[:, 0])]
        if abs(pts[-1, 0] - 0.5) > _TOL or abs(pts[0, 0]) > _TOL:
            raise InvalidDiagonalError("half-diagonal knots must span [0, 1/2]")
        left = pts[:-1]
        right = np.column_stack([1.0 - left[::-1, 0], left[::-1, 1] + 1.0 - 2.0 * left[::-1, 0]])
        return cls.piecewise_linear(np.vstack([left, pts[-1:], right]), validate)

    @classmethod
    def smooth(cls, func, derivative, alpha=None, validate=True, label="smooth"):
        d = cls(func, derivative=derivative, alpha=alpha, label=label)
        if validate:
            d.validate()
        return d

    @classmethod
    def from_section(cls, section, validate=True):
        """Diagonal from an exact main :class:`~footrule_rho.measures.DiagonalSection`."""
        if section.which != "main":
            raise InvalidDiagonalError("an anti-diagonal section is not a diagonal")
        return cls.piecewise_linear(np.column_stack([section.u, section.values]), validate)

    @property
    def is_piecewise_linear(self):
        return self.knots is not None

    def __call__(self, u):
        out = np.asarray(self._func(np.asarray(u, dtype=float)), dtype=float)
        return float(out) if out.ndim == 0 else out

    def derivative(self, u):
        if self._derivative is None:
            raise InvalidDiagonalError("this diagonal has no derivative")
        out = np.asarray(self._derivative(np.asarray(u, dtype=float)), dtype=float)
        return float(out) if out.ndim == 0 else out

    def breakpoints(self):
        return self._breaks.copy()

    def inverse(self, y):
        """Lower inverse ``min{t : delta(t) >= y}``."""
        return monotone_inverse(self._func, y)

    def g(self, u):
        """``g(u) = 2u - delta(u)``."""
        u = np.asarray(u, dtype=float)
        return 2.0 * u - self(u)

    def g_inverse(self, y):
        return monotone_inverse(self.g, y)

    def h(self, u):
        """``h(u) = delta^{-1}(g(u))``, where ``u = (delta(u) + delta(v)) / 2`` at ``v = h(u)``."""
        return self.inverse(self.g(u))

    def alpha(self, u):
        """``alpha(u) = int_0^u delta``."""
        u = np.asarray(u, dtype=float)
        if self._alpha is not None:
            out = np.asarray(self._alpha(u), dtype=float)
        elif self.is_piecewise_linear:
            k, v = self.knots, self.values
            cum = np.concatenate([[0.0], np.cumsum(np.diff(k) * (v[1:] + v[:-1]) / 2.0)])
            i = np.clip(np.searchsorted(k, u, side="right") - 1, 0, k.size - 2)
            out = cum[i] + (u - k[i]) * (v[i] + self(u)) / 2.0
        else:
            flat = np.atleast_1d(u)
            out = np.array([quadrature.integrate(self._func, 0.0, t) for t in flat]).reshape(u.shape)
        return float(out) if out.ndim == 0 else out

    def validate(self, grid=2001):
        """Raise :class:`InvalidDiagonalError` unless ``delta`` is a symmetric diagonal."""
        u = np.linspace(0.0, 1.0, grid)
        if self.is_piecewise_linear:
            u = np.union1d(u, self.knots)
        d = self(u)
        if abs(d[0]) > _TOL or abs(d[-1] - 1.0) > _TOL:
            raise InvalidDiagonalError("delta(0) = 0 and delta(1) = 1 are required")
        if np.any(d > u + _TOL) or np.any(d < np.maximum(0.0, 2.0 * u - 1.0) - _TOL):
            raise InvalidDiagonalError("delta must lie between max(0, 2u - 1) and u")
        rise, run = np.diff(d), np.diff(u)
        if np.any(rise < -_TOL) or np.any(rise > 2.0 * run + _TOL):
            raise InvalidDiagonalError("delta must be increasing and 2-Lipschitz")
        sym = np.abs(d - (2.0 * u - 1.0 + self(1.0 - u)))
        if np.max(sym) > 1e-10:
            raise InvalidDiagonalError(
                f"symmetry identity fails by {np.max(sym):.3e}")
        return self

    def __repr__(self):
        return f"SymmetricDiagonal({self.label})"


IDENTITY_DIAGONAL = SymmetricDiagonal.piecewise_linear([(0.0, 0.0), (1.0, 1.0)], label="identity")


def delta_a(a):
    """Piecewise-linear diagonal: 0 on ``[0, a]``, ``u - a`` up to ``1 - a``, then ``2u - 1``."""
    a = float(a)
    if not 0.0 <= a <= 0.5:
        raise DomainError(f"a = {a} is outside [0, 1/2]")
    pts = [(0.0, 0.0)]
    if 0.0 < a < 0.5:
        pts += [(a, 0.0), (1.0 - a, 1.0 - 2.0 * a)]
    elif a == 0.5:
        pts += [(0.5, 0.0)]
    pts.append((1.0, 1.0))
    return SymmetricDiagonal.piecewise_linear(pts, label=f"delta_a(a={a:g})")


def smooth_diagonal(s):
    """``delta_s(u) = u - (s / pi) sin(pi u)`` for ``0 < s < 1``.

    Its derivative ``1 - s cos(pi u)`` stays inside ``(0, 2)``, and
    ``alpha(1) = 1/2 - 2 s / pi^2``.
    """
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"s = {s} is outside (0, 1)")
    d = SymmetricDiagonal.smooth(
        lambda u: u - s / math.pi * np.sin(math.pi * u),
        lambda u: 1.0 - s * np.cos(math.pi * u),
        alpha=lambda u: 0.5 * u**2 - s / math.pi**2 * (1.0 - np.cos(math.pi * u)),
        label=f"smooth(s={s:g})")
    d.params = {"family": "smooth", "s": s}
    return d


# Shuffle families -------------------------------------------------------------

def family_Ca(a):
    """``C_a = M(3, (a, 1 - a), (3, 2, 1), (-1, 1, -1))``; ``C_0 = M``, ``C_{1/2} = W``.

    Its (footrule, rho) point ``(6a^2 - 6a + 1, 2(1 - 2a)^3 - 1)`` lies on
    the lower bound curve.
    """
    a = float(a)
    if not 0.0 <= a <= 0.5:
        raise DomainError(f"a = {a} is outside [0, 1/2]")
    if a == 0.0:
        return M
    if a == 0.5:
        return W
    return ShuffleOfM([a, 1.0 - a], (3, 2, 1), (-1, 1, -1))


def family_Cn(n):
    """Straight shuffle ``M(2n, (1/(2n), ...), (2, 1, 4, 3, ...), (1, ..., 1))``.

    An ordinal sum of ``n`` copies of ``C_1``; footrule ``1 - 3/(2n)`` and
    rho ``1 - 3/(2n^2)``, on the upper estimate curve.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n = {n} must be a positive integer")
    n = int(n)
    pi = np.arange(1, 2 * n + 1).reshape(n, 2)[:, ::-1].ravel()
    return ShuffleOfM(np.arange(1, 2 * n) / (2 * n), pi, np.ones(2 * n, dtype=int))


# Two-diagonal copulas ---------------------------------------------------------

class TwoDiagonalCopula(Copula):
    """Copula with all mass on the two diagonals, determined by its diagonal.

    ``delta`` must be increasing and 1-Lipschitz on ``[0, 1/2]``.
    """

    kind = "two-diagonal"
    symmetric = True
    doubly_symmetric = True

    def __init__(self, delta, grid=2001):
        u = np.linspace(0.0, 0.5, grid)
        if delta.is_piecewise_linear:
            u = np.union1d(u, delta.knots[delta.knots <= 0.5])
        rise, run = np.diff(delta(u)), np.diff(u)
        if np.any(rise < -_TOL) or np.any(rise > run + _TOL):
            raise InvalidDiagonalError(
                "a two-diagonal copula needs delta increasing and 1-Lipschitz on [0, 1/2]")
        self.delta = delta

    def _cdf(self, u, v):
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        # Below the anti-diagonal the smaller coordinate decides; above it the
        # larger one does, with a shift along the main diagonal.
        below = lo + hi <= 1.0
        return np.where(below, self.delta(lo), self.delta(hi) + lo - hi)

    def _breaks(self):
        b = self.delta.breakpoints()
        return np.unique(np.concatenate([b, 1.0 - b, [0.5]]))

    def _u_breaks(self):
        return self._breaks()

    def _v_kinks(self, u):
        b = self._breaks()
        return np.column_stack([u, 1.0 - u, np.broadcast_to(b, (u.size, b.size))])

    def _diag_breaks(self):
        return self._breaks()

    def _antidiag_breaks(self):
        return self._breaks()

    def __repr__(self):
        return f"TwoDiagonalCopula({self.delta!r})"


def two_diagonal_from_delta(delta):
    """The two-diagonal copula with diagonal ``delta``."""
    return TwoDiagonalCopula(delta)


# Diagonal copulas -------------------------------------------------------------

class DiagonalCopula(Copula):
    """``K_delta(u, v) = min(u, v, (delta(u) + delta(v)) / 2)``."""

    kind = "diagonal"
    symmetric = True

    def __init__(self, delta):
        self.delta = delta
        self.doubly_symmetric = True

    def _cdf(self, u, v):
        return np.minimum(np.minimum(u, v), 0.5 * (self.delta(u) + self.delta(v)))

    def _u_breaks(self):
        d = self.delta
        b = d.breakpoints()
        if b.size == 0:
            return b
        # Where the kink curves v = h(u) and v = g^{-1}(delta(u)) cross a
        # breakpoint line, plus where h reaches 1.
        return np.unique(np.concatenate([b, d.h(b), d.g_inverse(d(b)), [d.g_inverse(1.0)]]))

    def _v_kinks(self, u):
        d = self.delta
        b = d.breakpoints()
        cols = [u, d.h(u), d.g_inverse(d(u))]
        return np.column_stack(cols + [np.broadcast_to(b, (u.size, b.size))])

    def _diag_breaks(self):
        return self.delta.breakpoints()

    def _antidiag_breaks(self):
        d = self.delta
        b = d.breakpoints()
        return np.concatenate([b, 1.0 - b, [0.5, d.g_inverse(0.5), d.inverse(0.5)]])

    def __repr__(self):
        return f"DiagonalCopula({self.delta!r})"


def diagonal_copula(delta):
    """The diagonal copula ``K_delta`` of a symmetric diagonal."""
    if not isinstance(delta, SymmetricDiagonal):
        raise InvalidDiagonalError("diagonal_copula expects a SymmetricDiagonal")
    return DiagonalCopula(delta)


# Ordinal sums -----------------------------------------------------------------

class OrdinalSum(Copula):
    """Ordinal sum of ``components`` placed on squares ``[a_k, b_k]^2``; ``min(u, v)`` elsewhere."""

    kind = "ordinal"

    def __init__(self, intervals, components):
        self.intervals = _check_intervals(intervals, components)
        self.components = tuple(components)
        self.symmetric = all(c.symmetric for c in self.components)
        self.doubly_symmetric = False

    def _cdf(self, u, v):
        out = np.minimum(u, v)
        for (a, b), comp in zip(self.intervals, self.components):
            inside = (u > a) & (u < b) & (v > a) & (v < b)
            if np.any(inside):
                L = b - a
                out[inside] = a + L * comp._cdf((u[inside] - a) / L, (v[inside] - a) / L)
        return out

    def _scaled(self, attr):
        pts = [np.asarray(self.intervals).ravel()]
        for (a, b), comp in zip(self.intervals, self.components):
            pts.append(a + (b - a) * np.asarray(getattr(comp, attr)(), dtype=float))
        return np.unique(np.concatenate(pts))

    def _u_breaks(self):
        return self._scaled("_u_breaks")

    def _diag_breaks(self):
        return self._scaled("_diag_breaks")

    def _antidiag_breaks(self):
        # Off the component squares the anti-diagonal section is min(u, 1-u).
        return np.concatenate([self._scaled("_u_breaks"), [0.5]])

    def _v_kinks(self, u):
        ends = np.asarray(self.intervals).ravel()
        cols = [u[:, None], np.broadcast_to(ends, (u.size, ends.size))]
        for (a, b), comp in zip(self.intervals, self.components):
            inside = (u > a) & (u < b)
            uu = np.where(inside, (u - a) / (b - a), 0.5)
            k = comp._v_kinks(uu)
            if k is None:
                continue
            k = np.asarray(k, dtype=float).reshape(u.size, -1)
            cols.append(np.where(inside[:, None], a + (b - a) * k, np.nan))
        return np.concatenate(cols, axis=1)

    def __repr__(self):
        return f"OrdinalSum({list(self.intervals)}, {list(self.components)})"


def _check_intervals(intervals, components):
    iv = [(float(a), float(b)) for a, b in intervals]
    if len(iv) != len(components):
        raise InvalidCopulaError("one component per interval is required")
    for a, b in iv:
        if not 0.0 <= a < b <= 1.0:
            raise InvalidCopulaError(f"interval ({a}, {b}) is not inside [0, 1]")
    iv.sort()
    for (a1, b1), (a2, b2) in zip(iv, iv[1:]):
        if a2 < b1 - ATOL:
            raise InvalidCopulaError(f"intervals ({a1}, {b1}) and ({a2}, {b2}) overlap")
    return tuple(iv)


def ordinal_sum(intervals, components):
    """Ordinal sum of copulas on disjoint intervals.

    Components that are all shuffles are flattened into one
    :class:`ShuffleOfM`: uncovered gaps become increasing pieces on the main
    diagonal, so the exact measure paths apply.
    """
    pairs = sorted(zip([tuple(map(float, i)) for i in intervals], components),
                   key=lambda p: p[0])
    _check_intervals([p[0] for p in pairs], [p[1] for p in pairs])
    if not all(isinstance(c, ShuffleOfM) for _, c in pairs):
        return OrdinalSum([p[0] for p in pairs], [p[1] for p in pairs])
    widths, pi, omega = [], [], []
    pos = 0.0

    def add_identity(length):
        widths.append(length)
        pi.append(len(pi) + 1)
        omega.append(1)

    for (a, b), comp in pairs:
        if a > pos:
            add_identity(a - pos)
        start = len(pi)
        widths.extend((b - a) * comp.widths)
        pi.extend(start + np.asarray(comp.pi))
        omega.extend(comp.omega)
        pos = b
    if pos < 1.0:
        add_identity(1.0 - pos)
    splits = np.cumsum(widths)[:-1]
    return ShuffleOfM(np.clip(splits, 0.0, 1.0), pi, omega)


# Attainment -------------------------------------------------------------------

def kdelta_a(a):
    """Diagonal copula ``K_{delta_a}``; for ``a`` in ``[1/4, 1/2]`` its footrule is
    ``6a^2 - 6a + 1`` and its rho ``8a^3 - 6a + 3/2``."""
    return DiagonalCopula(delta_a(a))


def attaining_copula(x):
    """A copula with footrule ``x`` and Spearman's rho ``r(x)``.

    ``K_{delta_a}`` on ``[-1/2, -1/8]``, a mixture of ``K_{delta_{1/4}}`` and
    ``C_2`` on ``[-1/8, 1/4]``, mixtures of ``C_n`` and ``C_{n+1}`` beyond,
    and ``M`` at 1.  Mixture weights interpolate the footrule linearly.
    """
    x = float(x)
    if not -0.5 - _TOL <= x <= 1.0 + _TOL:
        raise DomainError(f"x = {x} is outside [-1/2, 1]")
    x = min(max(x, -0.5), 1.0)
    if x <= -0.125:
        return kdelta_a(0.5 - math.sqrt((1.0 + 2.0 * x) / 12.0))
    if x >= 1.0:
        return M
    if x <= 0.25:
        lo, hi, lo_c, hi_c = -0.125, 0.25, kdelta_a(0.25), family_Cn(2)
    else:
        n = attained_piece_index(x)
        lo, hi = 1.0 - 1.5 / n, 1.0 - 1.5 / (n + 1)
        lo_c, hi_c = family_Cn(n), family_Cn(n + 1)
    t = (hi - x) / (hi - lo)
    if t >= 1.0:
        return lo_c
    if t <= 0.0:
        return hi_c
    return MixtureCopula([(t, lo_c), (1.0 - t, hi_c)])


# Diagonal identities ----------------------------------------------------------

@dataclass(frozen=True)
class DiagonalIdentityReport:
    """Residuals of the integral identities for one smooth symmetric diagonal.

    ``residuals`` maps ``"a"`` through ``"g"`` to the largest absolute
    difference of the two sides; ``h_slack`` is
    ``2 alpha(1) - 2 alpha(1)^2 - 1/6 - int int K_delta``, which must be
    nonnegative.
    """

    residuals: dict
    h_slack: float
    double_integral: float
    alpha1: float
    tol: float

    @property
    def h_holds(self):
        return self.h_slack >= -self.tol

    @property
    def ok(self):
        return self.h_holds and all(r <= self.tol for r in self.residuals.values())

    def __bool__(self):
        return self.ok


def verify_diagonal_identities(delta, tol=1e-7, samples=1001):
    """Evaluate both sides of the integral identities of a smooth symmetric diagonal.

    Checked, with ``g(u) = 2u - delta(u)``, ``h = delta^{-1} o g`` and
    ``alpha(u) = int_0^u delta``:

    * (a) ``g^{-1}(u) = 1 - delta^{-1}(1 - u)`` on ``samples`` points,
    * (b) ``int u delta = alpha(1)/2 + 1/12``,
    * (c) ``int alpha = alpha(1)/2 - 1/12``,
    * (d) ``int delta^{-1} = 1 - alpha(1)``,
    * (e) ``int (delta^{-1})^2 = 5/6 - alpha(1)``,
    * (f) ``int alpha(h) = alpha(1) - 1 + int (4u - delta - u delta') h``,
    * (g) ``int int K_delta = int g^{-1} delta^{-1}``,
    * (h) ``int int K_delta <= 2 alpha(1) - 2 alpha(1)^2 - 1/6``.

    Raises :class:`InvalidDiagonalError` when ``delta`` has a piece of slope
    0 or 2, where the inverses above are not defined.
    """
    if not isinstance(delta, SymmetricDiagonal):
        raise InvalidDiagonalError("expected a SymmetricDiagonal")
    if delta.is_piecewise_linear:
        slopes = np.diff(delta.values) / np.diff(delta.knots)
        if np.any(slopes <= 1e-12) or np.any(slopes >= 2.0 - 1e-12):
            raise InvalidDiagonalError(
                "the identities need 0 < delta' < 2; this diagonal has a flat or steepest piece")
    else:
        u = np.linspace(0.0, 1.0, 4001)
        dd = delta.derivative(u)
        interior = (dd > 0.0) & (dd < 2.0)
        if np.count_nonzero(~interior) > 2 or np.any((dd < 0.0) | (dd > 2.0)):
            raise InvalidDiagonalError("the identities need 0 < delta' < 2 almost everywhere")

    b = delta.breakpoints()
    brk = np.unique(np.concatenate([b, delta(b), delta.g(b), 1.0 - b, 1.0 - delta(b),
                                    delta.h(b), delta.g_inverse(delta(b))]))

    def integ(f):
        return quadrature.integrate(f, breaks=brk)

    nodes = np.unique(np.concatenate([[0.0, 1.0], brk[(brk > 0.0) & (brk < 1.0)]]))
    mids = 0.5 * (nodes[:-1] + nodes[1:])

    def slope(t, own):
        # delta' jumps at the knots of a piecewise-linear diagonal; taking it
        # at the piece midpoint avoids one-sided values at panel endpoints.
        return delta.derivative(mids[own] if delta.is_piecewise_linear else t)

    def integ_with_slope(f):
        parts = quadrature.simpson_batch(lambda t, own: f(t, slope(t, own)),
                                         nodes[:-1], nodes[1:], quadrature.TOL_1D)
        return float(parts.sum())

    a1 = delta.alpha(1.0)
    u = np.linspace(0.0, 1.0, samples)
    res = {}
    res["a"] = float(np.max(np.abs(delta.g_inverse(u) - (1.0 - delta.inverse(1.0 - u)))))
    res["b"] = abs(integ(lambda t: t * delta(t)) - (0.5 * a1 + 1.0 / 12.0))
    res["c"] = abs(integ(delta.alpha) - (0.5 * a1 - 1.0 / 12.0))
    res["d"] = abs(integ(delta.inverse) - (1.0 - a1))
    res["e"] = abs(integ(lambda t: delta.inverse(t) ** 2) - (5.0 / 6.0 - a1))
    lhs = integ(lambda t: delta.alpha(delta.h(t)))
    rhs = a1 - 1.0 + integ_with_slope(
        lambda t, d: (4.0 * t - delta(t) - t * d) * delta.h(t))
    res["f"] = abs(lhs - rhs)
    k = DiagonalCopula(delta)
    double = quadrature.integrate_2d(k._cdf, u_breaks=k._u_breaks(), v_kinks=k._v_kinks)
    res["g"] = abs(double - integ(lambda t: delta.g_inverse(t) * delta.inverse(t)))
    slack = 2.0 * a1 - 2.0 * a1**2 - 1.0 / 6.0 - double
    return DiagonalIdentityReport(res, slack, double, a1, tol)
