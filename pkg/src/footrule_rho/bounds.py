"""Bound curves in the (footrule, rho) plane."""
import math

import numpy as np

from .exceptions import DomainError

_EPS = 1e-12
#: Largest linear-piece index of the attained curve that is evaluated.
N_MAX = 10**6


def _check_footrule(p, name="p"):
    p = float(p)
    if not (-0.5 - _EPS <= p <= 1.0 + _EPS):
        raise DomainError(f"{name} = {p} is outside [-1/2, 1]")
    return min(max(p, -0.5), 1.0)


def lower_bound_curve(p):
    """Smallest Spearman's rho compatible with footrule ``p``.

    ``(2 sqrt(3) / 9) (1 + 2p)^(3/2) - 1``, increasing from -1 at ``p = -1/2``
    to 1 at ``p = 1``.
    """
    p = _check_footrule(p)
    return 2.0 * math.sqrt(3.0) / 9.0 * (1.0 + 2.0 * p) ** 1.5 - 1.0


def upper_estimate_curve(p):
    """Upper estimate ``1 - (2/3)(1 - p)^2`` for Spearman's rho at footrule ``p``."""
    p = _check_footrule(p)
    return 1.0 - 2.0 / 3.0 * (1.0 - p) ** 2


def attained_piece_index(x):
    """Index ``n >= 2`` of the linear piece ``[1 - 3/(2n), 1 - 3/(2(n+1))]`` holding ``x``."""
    x = _check_footrule(x, "x")
    if x < 0.25 or x >= 1.0:
        raise DomainError(f"x = {x} is not on a linear piece of the attained curve")
    n = max(2, int(math.floor(1.5 / (1.0 - x))))
    if n > N_MAX + 1:
        raise DomainError(f"x = {x!r} needs piece index {n} > {N_MAX}")
    # The floor is off by at most one in floating point.
    while n > 2 and 1.0 - 1.5 / n > x:
        n -= 1
    while 1.0 - 1.5 / (n + 1) <= x:
        n += 1
    if n > N_MAX:
        raise DomainError(f"x = {x!r} needs piece index {n} > {N_MAX}")
    return n


def attained_curve(x):
    """Largest Spearman's rho known to be attained at footrule ``x``.

    Piecewise: a cubic-root branch on ``[-1/2, -1/8]``, the chord
    ``(4/3) x + 7/24`` on ``[-1/8, 1/4]``, chords between consecutive points
    ``(1 - 3/(2n), 1 - 3/(2n^2))`` beyond, and 1 at ``x = 1``.
    """
    x = _check_footrule(x, "x")
    if x <= -0.125:
        return 2.0 * x + 0.5 - math.sqrt(3.0) / 9.0 * (1.0 + 2.0 * x) ** 1.5
    if x <= 0.25:
        return 4.0 / 3.0 * x + 7.0 / 24.0
    if x >= 1.0:
        return 1.0
    n = attained_piece_index(x)
    d = n * n + n
    return (2 * n + 1) / d * x + (2 * n * n - 2 * n + 1) / (2 * d)


def alpha0_envelope(u, p):
    """Minimal integrated diagonal ``alpha_0(u)`` of a two-diagonal copula with footrule ``p``.

    Zero up to ``u_0 = (1 - sqrt((2p + 1) / 3)) / 2`` and ``(u - u_0)^2 / 2``
    after it, for ``u`` in ``[0, 1/2]``.
    """
    p = _check_footrule(p)
    u = np.asarray(u, dtype=float)
    if np.any((u < -_EPS) | (u > 0.5 + _EPS)):
        raise DomainError("u must lie in [0, 1/2]")
    u0 = 0.5 * (1.0 - math.sqrt((2.0 * p + 1.0) / 3.0))
    out = np.where(u > u0, 0.5 * (u - u0) ** 2, 0.0)
    return float(out) if out.ndim == 0 else out
