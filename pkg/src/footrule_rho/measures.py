"""Concordance function and (weak) concordance measures.

Shuffles of M, the independence copula and mixtures of these go through
exact paths: segment integrals with closed-form or piecewise-polynomial
integrands.  Anything else is handled by adaptive quadrature, and the method
used is recorded in :class:`MeasureReport`.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature
from .bounds import lower_bound_curve
from .copulas import (ATOL, Copula, Independence, MixtureCopula, ShuffleOfM,
                      _sample)
from .exceptions import UnsupportedCopulaError

MEASURES = ("phi", "rho", "tau", "gamma", "beta")
SECTION_NODES = 2049


def is_exact(c):
    """True when every measure of ``c`` has an exact path."""
    if isinstance(c, (ShuffleOfM, Independence)):
        return True
    if isinstance(c, MixtureCopula):
        return all(is_exact(comp) for _, comp in c.components)
    return False


def _check_method(method):
    if method not in ("auto", "exact", "quadrature"):
        raise ValueError(f"unknown method {method!r}")


def _linear(fn, c, method):
    return sum(wt * fn(comp, method) for wt, comp in c.components)


# Concordance function -------------------------------------------------------

def _segment_integral(mass, surface, method, tol):
    """Sum over segments of ``int surface(u(t), v(t)) dt``."""
    x, ys, om, w = mass.segments()
    keep = w > 0.0
    x, ys, om, w = x[keep], ys[keep], om[keep], w[keep]
    if x.size == 0:
        return 0.0
    kinks = None if method == "quadrature" else surface._line_kinks(x, ys, om)
    if kinks is None:
        if method == "exact":
            raise UnsupportedCopulaError(
                f"no exact line integrals for surface of kind {surface.kind!r}")

        def along(t, own):
            return surface._cdf(np.clip(x[own] + t, 0.0, 1.0),
                                np.clip(ys[own] + om[own] * t, 0.0, 1.0))

        return float(quadrature.simpson_batch(along, np.zeros_like(w), w, tol).sum())
    # Between consecutive kinks the integrand is a polynomial of degree <= 3,
    # so one Simpson panel per piece is exact.
    ok = np.isfinite(kinks) & (kinks > 0.0) & (kinks < w[:, None])
    t = np.where(ok, kinks, w[:, None])
    t = np.concatenate([np.zeros((w.size, 1)), t, w[:, None]], axis=1)
    t.sort(axis=1)
    a, b = t[:, :-1], t[:, 1:]
    m = 0.5 * (a + b)
    pts = np.stack([a, m, b])
    xx = np.clip(x[None, :, None] + pts, 0.0, 1.0)
    yy = np.clip(ys[None, :, None] + om[None, :, None] * pts, 0.0, 1.0)
    f = surface._cdf(xx.ravel(), yy.ravel()).reshape(pts.shape)
    return float(np.sum((b - a) / 6.0 * (f[0] + 4.0 * f[1] + f[2])))


def concordance(mass, surface, method="auto", tol=quadrature.TOL_1D):
    """Concordance function ``4 * int surface dmass - 1``.

    ``mass`` must be a shuffle, the independence copula or a mixture of these.
    With a surface of the same kind the result is exact; other surfaces are
    integrated along each mass segment by adaptive Simpson.
    """
    _check_method(method)
    if isinstance(mass, MixtureCopula):
        return sum(wt * concordance(comp, surface, method, tol)
                   for wt, comp in mass.components)
    if isinstance(surface, MixtureCopula) and method != "quadrature":
        if all(_line_capable(comp) for _, comp in surface.components):
            return sum(wt * concordance(mass, comp, method, tol)
                       for wt, comp in surface.components)
    if isinstance(mass, Independence):
        if isinstance(surface, Independence):
            return 0.0
        if isinstance(surface, ShuffleOfM):
            return concordance(surface, mass, method, tol)
        if method == "exact":
            raise UnsupportedCopulaError("Q(Pi, C) is exact only for shuffle surfaces")
        return 4.0 * _double_integral(surface) - 1.0
    if not isinstance(mass, ShuffleOfM):
        raise UnsupportedCopulaError(
            f"the mass argument must be a shuffle of M, not {type(mass).__name__}")
    return 4.0 * _segment_integral(mass, surface, method, tol) - 1.0


def _line_capable(c):
    return c._line_kinks(np.zeros(1), np.zeros(1), np.ones(1)) is not None


# Diagonal sections ----------------------------------------------------------

@dataclass(frozen=True)
class DiagonalSection:
    """Piecewise-linear diagonal ``C(u, u)`` or anti-diagonal ``C(u, 1 - u)``.

    ``exact`` is False when the breakpoints are a uniform sample of a
    surface whose section is not known to be piecewise linear.
    """

    u: np.ndarray
    values: np.ndarray
    which: str = "main"
    exact: bool = True

    def __call__(self, t):
        return np.interp(t, self.u, self.values)

    def breakpoints(self):
        return list(zip(self.u.tolist(), self.values.tolist()))

    def integral(self):
        return float(np.sum(np.diff(self.u) * (self.values[1:] + self.values[:-1])) / 2.0)

    def _cumulative(self):
        return np.concatenate([[0.0], np.cumsum(
            np.diff(self.u) * (self.values[1:] + self.values[:-1]) / 2.0)])

    def alpha(self, t):
        """Running integral ``int_0^t section``."""
        t = np.asarray(t, dtype=float)
        cum = self._cumulative()
        k = np.clip(np.searchsorted(self.u, t, side="right") - 1, 0, self.u.size - 2)
        out = cum[k] + (t - self.u[k]) * (self.values[k] + self(t)) / 2.0
        return float(out) if out.ndim == 0 else out

    def alpha_integral(self, upper=1.0):
        """``int_0^upper alpha``, exact since ``alpha`` is piecewise quadratic."""
        nodes = np.unique(np.concatenate([self.u[self.u < upper], [0.0, upper]]))
        a, b = nodes[:-1], nodes[1:]
        return float(np.sum((b - a) / 6.0 * (
            self.alpha(a) + 4.0 * self.alpha(0.5 * (a + b)) + self.alpha(b))))


def diagonal_section(c, which="main"):
    """Diagonal (``which="main"``) or anti-diagonal section of ``c``.

    Exact breakpoints for shuffles and mixtures of shuffles; a uniform
    2049-node sample, flagged inexact, otherwise.
    """
    if which not in ("main", "anti"):
        raise ValueError(f"unknown section {which!r}")
    if is_exact(c) and not _has_independence(c):
        u = np.unique(np.concatenate([[0.0, 1.0]] + [
            s.diagonal_breakpoints(which) for s in _shuffles(c)]))
        # Candidates that differ by rounding only would give noise slopes.
        u = u[np.concatenate([[True], np.diff(u) > 1e-14])]
        u[-1] = 1.0
        exact = True
    else:
        u = np.linspace(0.0, 1.0, SECTION_NODES)
        exact = False
    vals = c.cdf(u, u if which == "main" else 1.0 - u)
    return DiagonalSection(u, np.asarray(vals), which, exact)


def _shuffles(c):
    if isinstance(c, ShuffleOfM):
        return [c]
    return [s for _, comp in c.components for s in _shuffles(comp)]


def _has_independence(c):
    if isinstance(c, Independence):
        return True
    if isinstance(c, MixtureCopula):
        return any(_has_independence(comp) for _, comp in c.components)
    return False


def _section_integral(c, which, method):
    if isinstance(c, Independence):
        return 1.0 / 3.0 if which == "main" else 1.0 / 6.0
    if isinstance(c, MixtureCopula):
        return sum(wt * _section_integral(comp, which, method) for wt, comp in c.components)
    if isinstance(c, ShuffleOfM) and method != "quadrature":
        return diagonal_section(c, which).integral()
    if method == "exact":
        raise UnsupportedCopulaError(f"no exact section integral for kind {c.kind!r}")
    if which == "main":
        return quadrature.integrate(lambda u: c._cdf(u, u), breaks=c._diag_breaks())
    return quadrature.integrate(lambda u: c._cdf(u, 1.0 - u), breaks=c._antidiag_breaks())


def _double_integral(c, method="auto"):
    if isinstance(c, Independence):
        return 0.25
    if isinstance(c, MixtureCopula):
        return sum(wt * _double_integral(comp, method) for wt, comp in c.components)
    if isinstance(c, ShuffleOfM) and method != "quadrature":
        # int int C du dv = E[(1 - U)(1 - V)]: per segment a cubic in t.
        x, ys, om, w = c.segments()
        A = 1.0 - x
        B = 1.0 - ys
        return float(np.sum(A * B * w - (A * om + B) * w**2 / 2.0 + om * w**3 / 3.0))
    if method == "exact":
        raise UnsupportedCopulaError(f"no exact double integral for kind {c.kind!r}")
    return quadrature.integrate_2d(c._cdf, u_breaks=c._u_breaks(), v_kinks=c._v_kinks)


# Measures -------------------------------------------------------------------

def footrule(c, method="auto"):
    """Spearman's footrule ``6 int C(u, u) du - 2``, in ``[-1/2, 1]``."""
    _check_method(method)
    return 6.0 * _section_integral(c, "main", method) - 2.0


def spearman_rho(c, method="auto"):
    """Spearman's rho ``12 int int C - 3``."""
    _check_method(method)
    return 12.0 * _double_integral(c, method) - 3.0


def gini_gamma(c, method="auto"):
    """Gini's gamma ``4 int C(u, u) du + 4 int C(u, 1 - u) du - 2``."""
    _check_method(method)
    return 4.0 * _section_integral(c, "main", method) + \
        4.0 * _section_integral(c, "anti", method) - 2.0


def blomqvist_beta(c, method="auto"):
    """Blomqvist's beta ``4 C(1/2, 1/2) - 1``."""
    return 4.0 * c.cdf(0.5, 0.5) - 1.0


def kendall_tau(c):
    """Kendall's tau ``Q(C, C)``, exact only.

    Accepts shuffles, the independence copula and mixtures of these; a
    mixture is expanded bilinearly, ``sum_k sum_l w_k w_l Q(C_k, C_l)``.
    Other copulas raise :class:`UnsupportedCopulaError`; use
    :func:`monte_carlo` for those that can be sampled.
    """
    if not is_exact(c):
        raise UnsupportedCopulaError(
            f"Kendall's tau has no exact path for kind {c.kind!r}")
    if isinstance(c, MixtureCopula):
        comps = c.components
        return sum(wa * wb * concordance(ca, cb, "exact")
                   for wa, ca in comps for wb, cb in comps)
    return concordance(c, c, "exact")


def diagonal_mass(c):
    """``P(U = V) + P(U = 1 - V)``: mass lying on either diagonal."""
    if isinstance(c, MixtureCopula):
        return sum(wt * diagonal_mass(comp) for wt, comp in c.components)
    if isinstance(c, Independence):
        return 0.0
    if not isinstance(c, ShuffleOfM):
        raise UnsupportedCopulaError("diagonal mass is computed for shuffles only")
    x, ys, om, w = c.segments()
    main = (om == 1) & (np.abs(x - ys) <= ATOL)
    anti = (om == -1) & (np.abs(x + ys - 1.0) <= ATOL)
    return float(np.sum(w[main | anti]))


def lower_bound_gap(c, method="auto"):
    """Distance of ``rho`` above the lower bound curve at the copula's footrule.

    Nonnegative for every copula; zero exactly on the lower boundary.
    """
    phi = max(footrule(c, method), -0.5)
    return spearman_rho(c, method) - lower_bound_curve(min(phi, 1.0))


# Monte Carlo ------------------------------------------------------------------

def monte_carlo(c, count=100_000, seed=0):
    """Sample-based estimates of the measures with standard errors.

    Returns ``{name: (estimate, stderr)}``.  Uses
    ``int C(u,u) = E[1 - max(U,V)]``, ``int C(u,1-u) = E[(1 - U - V)^+]``,
    ``int int C = E[(1-U)(1-V)]`` and ``tau = 4 E[C(U,V)] - 1``.
    """
    uv = _sample(c, int(count), np.random.default_rng(seed))
    u, v = uv[:, 0], uv[:, 1]
    n = u.size

    def est(values, scale, shift):
        return (scale * float(np.mean(values)) + shift,
                abs(scale) * float(np.std(values, ddof=1)) / math.sqrt(n))

    diag = 1.0 - np.maximum(u, v)
    anti = np.maximum(0.0, 1.0 - u - v)
    return {
        "phi": est(diag, 6.0, -2.0),
        "rho": est((1.0 - u) * (1.0 - v), 12.0, -3.0),
        "tau": est(c.cdf(u, v), 4.0, -1.0),
        "gamma": est(4.0 * diag + 4.0 * anti, 1.0, -2.0),
        "beta": est(((u <= 0.5) & (v <= 0.5)).astype(float), 4.0, -1.0),
    }


# Reports --------------------------------------------------------------------

@dataclass(frozen=True)
class MeasureReport:
    """The five measures of one copula, each tagged with how it was obtained."""

    phi: float
    rho: float
    tau: float | None
    gamma: float
    beta: float
    methods: dict = field(default_factory=dict)
    monte_carlo: dict | None = None

    def to_dict(self):
        out = {name: getattr(self, name) for name in MEASURES}
        out["methods"] = dict(self.methods)
        if self.monte_carlo is not None:
            out["monte_carlo"] = {k: {"estimate": e, "stderr": s}
                                  for k, (e, s) in self.monte_carlo.items()}
        return out

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @staticmethod
    def csv_header():
        return ",".join(list(MEASURES) + [f"method_{m}" for m in MEASURES])

    def csv_row(self):
        vals = ["" if getattr(self, m) is None else repr(float(getattr(self, m)))
                for m in MEASURES]
        return ",".join(vals + [self.methods.get(m, "") for m in MEASURES])


def measure_report(c, mc=None, seed=0):
    """Compute all five measures, falling back to quadrature where needed.

    With ``mc`` set, Monte Carlo estimates from ``mc`` draws are attached
    and used for Kendall's tau when no exact path exists.
    """
    if not isinstance(c, Copula):
        raise TypeError(f"expected a copula, got {type(c).__name__}")
    exact = is_exact(c)
    qtag1 = f"quadrature({quadrature.TOL_1D:g})"
    qtag2 = f"quadrature({quadrature.TOL_2D:g})"
    methods = {
        "phi": "exact" if exact else qtag1,
        "rho": "exact" if exact else qtag2,
        "gamma": "exact" if exact else qtag1,
        "beta": "exact",
    }
    mc_result = None
    if mc:
        try:
            mc_result = monte_carlo(c, mc, seed)
        except TypeError:
            mc_result = None
    if exact:
        tau = kendall_tau(c)
        methods["tau"] = "exact"
    elif mc_result is not None:
        tau, err = mc_result["tau"]
        methods["tau"] = f"monte-carlo(n={int(mc)}, stderr={err:.3g})"
    else:
        tau = None
        methods["tau"] = "unavailable"
    return MeasureReport(
        phi=footrule(c), rho=spearman_rho(c), tau=tau,
        gamma=gini_gamma(c), beta=blomqvist_beta(c),
        methods=methods, monte_carlo=mc_result)
