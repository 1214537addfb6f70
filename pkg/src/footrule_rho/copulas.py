"""Bivariate copula representations.

Every copula is an immutable object exposing a vectorized ``cdf(u, v)``.
Shuffles of M carry a finite description (partition, permutation, flags)
that downstream code uses for exact computations; other families are
evaluated pointwise and handed to quadrature.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from .exceptions import DomainError, InvalidCopulaError

#: Absolute tolerance for structural equalities (widths, weights).
ATOL = 1e-12

TRANSFORMS = ("transpose", "sigma1", "sigma2", "survival")

# Upper bound on the number of (point, segment) pairs evaluated at once.
_CHUNK = 2_000_000


class Copula(ABC):
    """Abstract bivariate copula surface."""

    kind = "generic"
    #: True when ``C == C^t`` is known structurally.
    symmetric = False
    #: True when ``C == C^t == survival(C)`` is known structurally.
    doubly_symmetric = False

    def cdf(self, u, v):
        """Evaluate the copula at ``(u, v)``; inputs broadcast."""
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float),
                                   np.asarray(v, dtype=float))
        bad = ~((u >= 0.0) & (u <= 1.0) & (v >= 0.0) & (v <= 1.0))
        if np.any(bad):
            raise DomainError("copula arguments must lie in [0, 1]")
        out = np.asarray(self._cdf(u.ravel(), v.ravel()), dtype=float)
        out = out.reshape(u.shape)
        return float(out) if out.ndim == 0 else out

    __call__ = cdf

    @abstractmethod
    def _cdf(self, u, v):
        """Evaluate on flat arrays already known to lie in the unit square."""

    # Quadrature hints.  Each returns points where the surface, or one of its
    # sections, may fail to be smooth.  Defaults claim nothing.
    def _u_breaks(self):
        return np.empty(0)

    def _v_kinks(self, u):
        return np.empty((np.size(u), 0))

    def _diag_breaks(self):
        return np.empty(0)

    def _antidiag_breaks(self):
        return np.empty(0)

    def _line_kinks(self, x, ys, om):
        """Kinks of the surface along lines ``(x + t, ys + om * t)``.

        Returns an array of shape ``(len(x), k)`` of parameters ``t`` such that
        between consecutive kinks the restriction is a polynomial of degree at
        most 3, or None when no such description is available.
        """
        return None

    def __repr__(self):
        return f"{type(self).__name__}()"


class Independence(Copula):
    """The product copula ``uv``."""

    kind = "builtin"
    symmetric = True
    doubly_symmetric = True
    name = "Pi"

    def _cdf(self, u, v):
        return u * v

    def _line_kinks(self, x, ys, om):
        return np.empty((np.size(x), 0))

    def __repr__(self):
        return "Pi"


class ShuffleOfM(Copula):
    """A shuffle of M, ``M(n, J, pi, omega)``.

    Parameters
    ----------
    splits : sequence of float
        Interior splitting points ``u_1 <= ... <= u_{n-1}`` of the partition.
        Repeated points give zero-width pieces, which carry no mass.
    pi : sequence of int
        Permutation of ``1..n`` assigning each piece its vertical slot.
    omega : sequence of int
        Orientation flags, ``+1`` for increasing and ``-1`` for decreasing
        segments.
    """

    kind = "shuffle"

    def __init__(self, splits, pi, omega):
        pi = np.asarray(pi, dtype=int).ravel()
        omega = np.asarray(omega, dtype=int).ravel()
        n = pi.size
        if n < 1:
            raise InvalidCopulaError("a shuffle needs at least one piece")
        if omega.size != n:
            raise InvalidCopulaError("omega must have one flag per piece")
        if sorted(pi.tolist()) != list(range(1, n + 1)):
            raise InvalidCopulaError(f"pi is not a permutation of 1..{n}: {pi.tolist()}")
        if not np.all(np.abs(omega) == 1):
            raise InvalidCopulaError("omega entries must be +1 or -1")
        splits = np.asarray(splits, dtype=float).ravel()
        if splits.size != n - 1:
            raise InvalidCopulaError(f"expected {n - 1} splitting points, got {splits.size}")
        points = np.concatenate([[0.0], splits, [1.0]])
        if not np.all(np.isfinite(points)) or np.any(np.diff(points) < 0.0):
            raise InvalidCopulaError("splitting points must be nondecreasing in [0, 1]")
        self._points = points
        self._pi = pi
        self._omega = omega
        for arr in (points, pi, omega):
            arr.setflags(write=False)
        self._derive()

    @classmethod
    def from_widths(cls, widths, pi, omega):
        """Build a shuffle from piece widths summing to one."""
        widths = np.asarray(widths, dtype=float).ravel()
        if np.any(widths < 0.0):
            raise InvalidCopulaError("piece widths must be nonnegative")
        total = widths.sum()
        if abs(total - 1.0) > ATOL:
            raise InvalidCopulaError(f"piece widths sum to {total!r}, not 1")
        return cls(np.cumsum(widths)[:-1], pi, omega)

    def _derive(self):
        pts = self._points
        pi0 = self._pi - 1
        w = np.diff(pts)
        pinv = np.argsort(pi0)
        vpts = np.concatenate([[0.0], np.cumsum(w[pinv])])
        vpts[-1] = 1.0
        y0 = vpts[pi0]
        self._w = w
        self._pinv = pinv
        self._vpoints = vpts
        self._x = pts[:-1]
        self._y0 = y0
        self._ys = np.where(self._omega == 1, y0, y0 + w)

    # Representation ------------------------------------------------------
    @property
    def n(self):
        return int(self._pi.size)

    @property
    def splits(self):
        """Interior splitting points ``(u_1, ..., u_{n-1})``."""
        return tuple(float(p) for p in self._points[1:-1])

    @property
    def points(self):
        """All splitting points ``u_0 = 0, ..., u_n = 1``."""
        return self._points

    @property
    def v_points(self):
        """Vertical splitting points implied by the widths and permutation."""
        return self._vpoints

    @property
    def widths(self):
        return self._w

    @property
    def pi(self):
        return tuple(int(p) for p in self._pi)

    @property
    def omega(self):
        return tuple(int(o) for o in self._omega)

    def segments(self):
        """Segment geometry as arrays ``(x, ys, om, w)``.

        Segment ``i`` is ``t -> (x[i] + t, ys[i] + om[i] * t)`` for
        ``0 <= t <= w[i]`` and carries mass ``w[i]``.
        """
        return self._x, self._ys, self._omega.astype(float), self._w

    def __eq__(self, other):
        if not isinstance(other, ShuffleOfM):
            return NotImplemented
        return (self.pi == other.pi and self.omega == other.omega
                and np.array_equal(self._points, other._points))

    def __hash__(self):
        return hash((self.pi, self.omega, self._points.tobytes()))

    def __repr__(self):
        sp = ", ".join(f"{p:.6g}" for p in self.splits)
        return f"ShuffleOfM(n={self.n}, splits=({sp}), pi={self.pi}, omega={self.omega})"

    # Evaluation ----------------------------------------------------------
    def _cdf(self, u, v):
        out = np.empty(u.size)
        step = max(1, _CHUNK // self.n)
        x, y0, w = self._x, self._y0, self._w
        inc = self._omega == 1
        for lo in range(0, u.size, step):
            uu = u[lo:lo + step, None]
            vv = v[lo:lo + step, None]
            reach = np.minimum(w, uu - x)
            up = np.minimum(reach, vv - y0)
            down = reach - np.maximum(0.0, y0 + w - vv)
            out[lo:lo + step] = np.maximum(0.0, np.where(inc, up, down)).sum(axis=1)
        return out

    def _segment_at(self, u):
        idx = np.searchsorted(self._points, u, side="right") - 1
        return np.clip(idx, 0, self.n - 1)

    def _u_breaks(self):
        return self._points

    def _v_kinks(self, u):
        u = np.asarray(u, dtype=float)
        idx = self._segment_at(u)
        pos = self._ys[idx] + self._omega[idx] * (u - self._x[idx])
        grid = np.broadcast_to(self._vpoints, (u.size, self._vpoints.size))
        return np.concatenate([grid, pos[:, None]], axis=1)

    def diagonal_breakpoints(self, which="main"):
        """Points between which the main or anti-diagonal section is linear."""
        x, ys, om, w = self.segments()
        if which == "main":
            t = 0.5 * (ys - x)
            cross = (om == -1) & (t >= 0.0) & (t <= w)
            extra = (x + t)[cross]
            cand = [self._points, self._vpoints, extra]
        elif which == "anti":
            t = 0.5 * (1.0 - x - ys)
            cross = (om == 1) & (t >= 0.0) & (t <= w)
            extra = (x + t)[cross]
            cand = [self._points, 1.0 - self._vpoints, extra]
        else:
            raise ValueError(f"unknown section {which!r}")
        pts = np.clip(np.concatenate(cand), 0.0, 1.0)
        return np.unique(np.concatenate([[0.0, 1.0], pts]))

    def _diag_breaks(self):
        return self.diagonal_breakpoints("main")

    def _antidiag_breaks(self):
        return self.diagonal_breakpoints("anti")

    def _line_kinks(self, x, ys, om):
        x = np.asarray(x, dtype=float)[:, None]
        ys = np.asarray(ys, dtype=float)[:, None]
        om = np.asarray(om, dtype=float)[:, None]
        t_u = self._points[None, :] - x
        t_v = (self._vpoints[None, :] - ys) * om
        sx, sys_, som, _ = self.segments()
        denom = om - som[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            t_s = (som[None, :] * (x - sx[None, :]) + sys_[None, :] - ys) / denom
        t_s = np.where(denom == 0.0, np.nan, t_s)
        return np.concatenate([t_u, t_v, t_s], axis=1)


#: Upper Frechet-Hoeffding bound ``min(u, v)``.
M = ShuffleOfM([], (1,), (1,))
#: Lower Frechet-Hoeffding bound ``max(0, u + v - 1)``.
W = ShuffleOfM([], (1,), (-1,))
#: Independence copula ``uv``.
PI = Independence()


class MixtureCopula(Copula):
    """Convex combination of copulas."""

    kind = "mixture"

    def __init__(self, components):
        comps = [(float(wt), c) for wt, c in components]
        if not comps:
            raise InvalidCopulaError("a mixture needs at least one component")
        weights = np.array([wt for wt, _ in comps])
        if np.any(weights < 0.0):
            raise InvalidCopulaError("mixture weights must be nonnegative")
        if abs(weights.sum() - 1.0) > ATOL:
            raise InvalidCopulaError(f"mixture weights sum to {weights.sum()!r}, not 1")
        for _, c in comps:
            if not isinstance(c, Copula):
                raise InvalidCopulaError(f"mixture component {c!r} is not a copula")
        self.components = tuple(comps)
        self.symmetric = all(c.symmetric for _, c in comps)
        self.doubly_symmetric = all(c.doubly_symmetric for _, c in comps)

    @property
    def weights(self):
        return np.array([wt for wt, _ in self.components])

    def _cdf(self, u, v):
        return sum(wt * c._cdf(u, v) for wt, c in self.components)

    def _u_breaks(self):
        return np.concatenate([c._u_breaks() for _, c in self.components])

    def _v_kinks(self, u):
        return np.concatenate([c._v_kinks(u) for _, c in self.components], axis=1)

    def _diag_breaks(self):
        return np.concatenate([c._diag_breaks() for _, c in self.components])

    def _antidiag_breaks(self):
        return np.concatenate([c._antidiag_breaks() for _, c in self.components])

    def _line_kinks(self, x, ys, om):
        parts = [c._line_kinks(x, ys, om) for _, c in self.components]
        if any(p is None for p in parts):
            return None
        return np.concatenate(parts, axis=1)

    def __repr__(self):
        inner = ", ".join(f"({wt:.6g}, {c!r})" for wt, c in self.components)
        return f"MixtureCopula([{inner}])"


class TransformedCopula(Copula):
    """A reflection of an arbitrary copula, evaluated through the base."""

    kind = "transform"

    def __init__(self, base, which):
        if which not in TRANSFORMS:
            raise DomainError(f"unknown transform {which!r}")
        self.base = base
        self.which = which
        if which in ("transpose", "survival"):
            self.symmetric = base.symmetric
            self.doubly_symmetric = base.doubly_symmetric

    def _cdf(self, u, v):
        c = self.base._cdf
        if self.which == "transpose":
            return c(v, u)
        if self.which == "sigma1":
            return v - c(1.0 - u, v)
        if self.which == "sigma2":
            return u - c(u, 1.0 - v)
        return u + v - 1.0 + c(1.0 - u, 1.0 - v)

    def _u_breaks(self):
        b = self.base._u_breaks()
        if self.which == "transpose":
            return b if self.base.symmetric else np.empty(0)
        return b if self.which == "sigma2" else 1.0 - b

    def _v_kinks(self, u):
        u = np.asarray(u, dtype=float)
        k = self.base._v_kinks
        if self.which == "transpose":
            return k(u) if self.base.symmetric else np.empty((u.size, 0))
        if self.which == "sigma1":
            return k(1.0 - u)
        if self.which == "sigma2":
            return 1.0 - k(u)
        return 1.0 - k(1.0 - u)

    def _diag_breaks(self):
        if self.which == "transpose":
            return self.base._diag_breaks()
        if self.which == "survival":
            return 1.0 - self.base._diag_breaks()
        # C(1-u, u) and C(u, 1-u) are anti-diagonal sections of the base
        if self.which == "sigma1":
            return 1.0 - self.base._antidiag_breaks()
        return self.base._antidiag_breaks()

    def _antidiag_breaks(self):
        if self.which == "transpose":
            return 1.0 - self.base._antidiag_breaks()
        if self.which == "survival":
            return 1.0 - self.base._antidiag_breaks()
        if self.which == "sigma1":
            return 1.0 - self.base._diag_breaks()
        return self.base._diag_breaks()

    def __repr__(self):
        return f"TransformedCopula({self.base!r}, {self.which!r})"


def _shuffle_transform(s, which):
    w = s.widths
    pi = np.asarray(s.pi)
    om = np.asarray(s.omega)
    n = s.n
    if which == "transpose":
        pinv = np.argsort(pi - 1)
        return ShuffleOfM(np.cumsum(w[pinv])[:-1], pinv + 1, om[pinv])
    if which == "sigma1":
        return ShuffleOfM(np.cumsum(w[::-1])[:-1], pi[::-1], -om[::-1])
    if which == "sigma2":
        return ShuffleOfM(s.splits, n + 1 - pi, -om)
    return _shuffle_transform(_shuffle_transform(s, "sigma1"), "sigma2")


def transform(c, which):
    """Apply a reflection of the unit square to a copula.

    ``which`` is one of ``transpose`` (``C(v, u)``), ``sigma1``
    (``v - C(1 - u, v)``), ``sigma2`` (``u - C(u, 1 - v)``) or ``survival``
    (``u + v - 1 + C(1 - u, 1 - v)``).  Shuffles come back as shuffles and
    mixtures as mixtures, so exact computations stay available.
    """
    if which not in TRANSFORMS:
        raise DomainError(f"unknown transform {which!r}; expected one of {TRANSFORMS}")
    if isinstance(c, ShuffleOfM):
        return _shuffle_transform(c, which)
    if isinstance(c, Independence):
        return c
    if isinstance(c, MixtureCopula):
        return MixtureCopula([(wt, transform(comp, which)) for wt, comp in c.components])
    if which == "transpose" and c.symmetric:
        return c
    if which == "survival" and c.doubly_symmetric:
        return c
    return TransformedCopula(c, which)


def symmetrize(c):
    """Average ``c`` over transposition and survival: a doubly symmetric copula."""
    t = transform(c, "transpose")
    return MixtureCopula([(0.25, c), (0.25, t),
                          (0.25, transform(c, "survival")),
                          (0.25, transform(t, "survival"))])


@dataclass(frozen=True)
class SymmetryReport:
    """Outcome of the doubly-symmetric-shuffle predicate."""

    ok: bool
    clause: str = ""
    detail: str = ""

    def __bool__(self):
        return self.ok


def is_doubly_symmetric_shuffle(s, tol=ATOL):
    """Check the four structural conditions of a doubly symmetric shuffle.

    Returns a :class:`SymmetryReport` that is truthy iff all of (i) ``n`` even,
    (ii) ``pi`` an involution compatible with the reflection ``i -> n + 1 - i``,
    (iii) matching flags on each orbit and (iv) matching widths hold.  The
    report names the first violated clause.
    """
    n = s.n
    pi = np.asarray(s.pi) - 1
    om = np.asarray(s.omega)
    w = s.widths
    rev = n - 1 - np.arange(n)
    if n % 2:
        return SymmetryReport(False, "i", f"n = {n} is odd")
    bad = np.flatnonzero((pi[pi] != np.arange(n)) | (pi[rev] != n - 1 - pi))
    if bad.size:
        return SymmetryReport(False, "ii", f"permutation condition fails at i = {bad[0] + 1}")
    bad = np.flatnonzero((om != om[pi]) | (om != om[rev]))
    if bad.size:
        return SymmetryReport(False, "iii", f"flag condition fails at i = {bad[0] + 1}")
    bad = np.flatnonzero((np.abs(w - w[pi]) > tol) | (np.abs(w - w[rev]) > tol))
    if bad.size:
        return SymmetryReport(False, "iv", f"width condition fails at i = {bad[0] + 1}")
    return SymmetryReport(True)


@dataclass(frozen=True)
class Rectangle:
    """Axis-parallel rectangle ``[u1, u2] x [v1, v2]`` in the unit square."""

    u1: float
    u2: float
    v1: float
    v2: float

    def __post_init__(self):
        if not (0.0 <= self.u1 <= self.u2 <= 1.0 and 0.0 <= self.v1 <= self.v2 <= 1.0):
            raise DomainError(f"invalid rectangle {self}")


def volume(c, rect):
    """The ``c``-volume of a rectangle (a :class:`Rectangle` or 4-tuple)."""
    if not isinstance(rect, Rectangle):
        rect = Rectangle(*rect)
    vals = c.cdf([rect.u2, rect.u2, rect.u1, rect.u1], [rect.v2, rect.v1, rect.v2, rect.v1])
    return float(vals[0] - vals[1] - vals[2] + vals[3])


class BernsteinCopula(Copula):
    """Bernstein polynomial approximation of a copula of degree ``n``."""

    kind = "bernstein"

    def __init__(self, base, n):
        n = int(n)
        if n < 1:
            raise DomainError("Bernstein degree must be at least 1")
        self.base = base
        self.degree = n
        g = np.arange(n + 1) / n
        self._grid = base.cdf(g[:, None], g[None, :])
        self._logbinom = gammaln(n + 1) - gammaln(np.arange(n + 1) + 1) - gammaln(n - np.arange(n + 1) + 1)
        self.symmetric = base.symmetric
        self.doubly_symmetric = base.doubly_symmetric

    def _basis(self, x):
        k = np.arange(self.degree + 1)
        x = x[:, None]
        logp = self._logbinom + xlogy(k, x) + xlogy(self.degree - k, 1.0 - x)
        return np.exp(logp)

    def _cdf(self, u, v):
        return np.einsum("pi,ij,pj->p", self._basis(u), self._grid, self._basis(v))

    def __repr__(self):
        return f"BernsteinCopula({self.base!r}, n={self.degree})"


def bernstein(c, n):
    """Bernstein copula ``sum C(i/n, j/n) b_i(u) b_j(v)`` of degree ``n``."""
    return BernsteinCopula(c, n)


def _sample(c, count, rng):
    if isinstance(c, ShuffleOfM):
        u = rng.random(count)
        idx = c._segment_at(u)
        v = c._ys[idx] + c._omega[idx] * (u - c._x[idx])
        return np.column_stack([u, np.clip(v, 0.0, 1.0)])
    if isinstance(c, Independence):
        return rng.random((count, 2))
    if isinstance(c, MixtureCopula):
        labels = rng.choice(len(c.components), size=count, p=c.weights / c.weights.sum())
        out = np.empty((count, 2))
        for k, (_, comp) in enumerate(c.components):
            sel = labels == k
            if sel.any():
                out[sel] = _sample(comp, int(sel.sum()), rng)
        return out
    if isinstance(c, TransformedCopula):
        uv = _sample(c.base, count, rng)
        u, v = uv[:, 0], uv[:, 1]
        if c.which == "transpose":
            return np.column_stack([v, u])
        if c.which == "sigma1":
            return np.column_stack([1.0 - u, v])
        if c.which == "sigma2":
            return np.column_stack([u, 1.0 - v])
        return 1.0 - uv
    if isinstance(c, BernsteinCopula):
        # Density is a mixture of products of Beta(i + 1, n - i) densities
        # weighted by the base copula's cell masses.
        n = c.degree
        cells = np.diff(np.diff(c._grid, axis=0), axis=1).clip(min=0.0).ravel()
        pick = rng.choice(cells.size, size=count, p=cells / cells.sum())
        i, j = np.divmod(pick, n)
        return np.column_stack([rng.beta(i + 1, n - i), rng.beta(j + 1, n - j)])
    raise TypeError(f"sampling is not available for {type(c).__name__}")


def sample(c, count, seed=None):
    """Draw ``count`` points from a shuffle, Pi, a Bernstein copula, or mixtures
    and symmetry transforms of these.

    For a shuffle ``u`` is uniform and ``v`` is read off the segment that
    contains ``u``; points on a piece boundary go to the right-hand piece.
    Returns an array of shape ``(count, 2)``.
    """
    count = int(count)
    if count < 1:
        raise DomainError("count must be positive")
    return _sample(c, count, np.random.default_rng(seed))


def sup_distance(c1, c2, grid=100):
    """Largest ``|c1 - c2|`` over the ``(grid + 1)**2`` lattice.

    Both copulas are 1-Lipschitz in each argument, so the true supremum
    exceeds the returned value by at most ``2 / grid``.
    """
    grid = int(grid)
    if grid < 2:
        raise DomainError("grid must be at least 2")
    g = np.linspace(0.0, 1.0, grid + 1)
    uu, vv = np.meshgrid(g, g, indexing="ij")
    return float(np.max(np.abs(c1.cdf(uu, vv) - c2.cdf(uu, vv))))


@dataclass(frozen=True)
class ValidityReport:
    """Largest violations of the copula axioms found on a test grid."""

    grounded: float
    marginals: float
    frechet: float
    two_increasing: float
    tol: float

    @property
    def ok(self):
        return max(self.grounded, self.marginals, self.frechet, self.two_increasing) <= self.tol

    def __bool__(self):
        return self.ok


def check_copula(c, grid=64, seed=0, tol=ATOL):
    """Test the copula axioms on a randomized lattice.

    The lattice mixes ``grid`` uniform nodes with as many random nodes per
    axis.  Reported numbers are violation magnitudes (zero when satisfied).
    """
    rng = np.random.default_rng(seed)
    nodes = np.unique(np.concatenate([np.linspace(0.0, 1.0, grid + 1), rng.random(grid)]))
    uu, vv = np.meshgrid(nodes, nodes, indexing="ij")
    vals = c.cdf(uu, vv)
    grounded = max(np.max(np.abs(vals[0, :])), np.max(np.abs(vals[:, 0])))
    marginals = max(np.max(np.abs(vals[-1, :] - nodes)), np.max(np.abs(vals[:, -1] - nodes)))
    lower = np.maximum(0.0, uu + vv - 1.0)
    upper = np.minimum(uu, vv)
    frechet = max(np.max(lower - vals), np.max(vals - upper), 0.0)
    vol = vals[1:, 1:] - vals[1:, :-1] - vals[:-1, 1:] + vals[:-1, :-1]
    two_inc = max(-np.min(vol), 0.0) + 0.0
    return ValidityReport(float(grounded), float(marginals), float(frechet), float(two_inc), tol)
