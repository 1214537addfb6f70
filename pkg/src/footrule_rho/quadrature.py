"""Vectorized adaptive Simpson quadrature.

All intervals of one refinement level are evaluated in a single call of the
integrand, so the integrand must accept numpy arrays.  Tolerances are
absolute and distributed proportionally to interval length, which keeps the
total error of a batch below the requested tolerance.
"""
import numpy as np

from .exceptions import QuadratureError

MAX_DEPTH = 30
TOL_1D = 1e-10
TOL_2D = 1e-9
ROUNDOFF_DEPTH = 20
ROUNDOFF_FLOOR = 16.0 * np.finfo(float).eps


def simpson_batch(f, a, b, tol_density, max_depth=MAX_DEPTH, min_depth=2):
    """Integrate ``f`` over each interval ``[a[k], b[k]]``.

    Parameters
    ----------
    f : callable
        ``f(x, owner)`` returning an array shaped like ``x``; ``owner`` holds
        the index of the original interval each abscissa belongs to.
    a, b : array_like
        Interval endpoints, ``a <= b`` elementwise.
    tol_density : float or array_like
        Absolute tolerance per unit length for each interval.
    max_depth : int
        Bisection depth after which :class:`QuadratureError` is raised.

    Returns
    -------
    ndarray
        One integral per interval.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    out = np.zeros(a.size)
    if a.size == 0:
        return out
    owner = np.arange(a.size)
    tdens = np.broadcast_to(np.asarray(tol_density, dtype=float), a.shape).copy()

    m = 0.5 * (a + b)
    vals = f(np.concatenate([a, m, b]), np.concatenate([owner] * 3))
    fa, fm, fb = np.split(np.asarray(vals, dtype=float), 3)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    depth = 0
    while a.size:
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = np.split(np.asarray(
            f(np.concatenate([lm, rm]), np.concatenate([owner, owner])),
            dtype=float), 2)
        h = (b - a) / 12.0
        left = h * (fa + 4.0 * flm + fm)
        right = h * (fm + 4.0 * frm + fb)
        err = left + right - whole
        done = np.abs(err) <= 15.0 * tdens * (b - a)
        if depth >= ROUNDOFF_DEPTH:
            # A breakpoint rounded one ulp away from the true kink leaves an
            # error of order eps that no amount of bisection removes.
            done |= np.abs(err) <= ROUNDOFF_FLOOR
        if depth < min_depth:
            done &= (b - a) == 0.0
        if np.any(done):
            np.add.at(out, owner[done], left[done] + right[done] + err[done] / 15.0)
        keep = ~done
        if not np.any(keep):
            break
        depth += 1
        if depth > max_depth:
            worst = float(np.max(np.abs(err[keep])))
            raise QuadratureError(
                f"adaptive Simpson did not converge within depth {max_depth} "
                f"(largest local error estimate {worst:.3e})")
        a, m, b = a[keep], m[keep], b[keep]
        fa, flm, fm, frm, fb = fa[keep], flm[keep], fm[keep], frm[keep], fb[keep]
        owner, tdens = owner[keep], tdens[keep]
        left, right = left[keep], right[keep]
        a = np.concatenate([a, m])
        b = np.concatenate([m, b])
        fa, fm, fb = (np.concatenate([fa, fm]), np.concatenate([flm, frm]),
                      np.concatenate([fm, fb]))
        whole = np.concatenate([left, right])
        owner = np.concatenate([owner, owner])
        tdens = np.concatenate([tdens, tdens])
    return out


def _nodes(lo, hi, breaks):
    pts = np.asarray(breaks, dtype=float).ravel()
    pts = pts[np.isfinite(pts)]
    pts = pts[(pts > lo) & (pts < hi)]
    return np.unique(np.concatenate([[lo, hi], pts]))


def integrate(f, lo=0.0, hi=1.0, tol=TOL_1D, breaks=(), max_depth=MAX_DEPTH):
    """Integrate a vectorized scalar function over ``[lo, hi]``.

    ``breaks`` lists points where ``f`` may fail to be smooth; the interval is
    split there first so each piece has a smooth integrand.
    """
    if hi <= lo:
        return 0.0
    nodes = _nodes(lo, hi, breaks)
    parts = simpson_batch(lambda x, _: f(x), nodes[:-1], nodes[1:],
                          tol / (hi - lo), max_depth=max_depth)
    return float(parts.sum())


def integrate_2d(f, tol=TOL_2D, u_breaks=(), v_kinks=None, max_depth=MAX_DEPTH):
    """Integrate ``f(u, v)`` over the unit square by nested adaptive Simpson.

    Parameters
    ----------
    f : callable
        Vectorized surface ``f(u, v)``.
    u_breaks : array_like
        Abscissae where the inner integral may be non-smooth in ``u``.
    v_kinks : callable, optional
        ``v_kinks(u)`` returns an array of shape ``(len(u), k)`` with points
        where ``f(u, .)`` may be non-smooth.  Entries outside ``(0, 1)`` and
        NaNs are ignored.
    """
    half = 0.5 * tol

    def inner(u, _owner):
        u = np.asarray(u, dtype=float)
        if v_kinks is None:
            kinks = np.empty((u.size, 0))
        else:
            kinks = np.asarray(v_kinks(u), dtype=float).reshape(u.size, -1)
        kinks = np.where(np.isfinite(kinks), np.clip(kinks, 0.0, 1.0), 0.0)
        nodes = np.concatenate(
            [np.zeros((u.size, 1)), kinks, np.ones((u.size, 1))], axis=1)
        nodes.sort(axis=1)
        k = nodes.shape[1] - 1
        a = nodes[:, :-1].ravel()
        b = nodes[:, 1:].ravel()
        row = np.repeat(np.arange(u.size), k)
        parts = simpson_batch(lambda v, own: f(u[row[own]], v), a, b, half,
                              max_depth=max_depth)
        return np.bincount(row, weights=parts, minlength=u.size)

    nodes = _nodes(0.0, 1.0, u_breaks)
    parts = simpson_batch(inner, nodes[:-1], nodes[1:], half, max_depth=max_depth)
    return float(parts.sum())
