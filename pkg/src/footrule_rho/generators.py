"""Random and parametric copula generators used by the region scanner and tests.

Every generator is a function ``(index, rng) -> (copula, source)`` where
``source`` is a short descriptor string.  Random generators draw from
``rng``; parametric ones map ``index`` to a parameter.
"""
import numpy as np

from .copulas import PI, MixtureCopula, ShuffleOfM
from .exceptions import DomainError
from .extremal import family_Ca, family_Cn, kdelta_a
from .reduction import shuffle_from_cell_masses, symmetric_cell_masses

MAX_PIECES = 40
CN_MAX = 50


def random_shuffle(rng, max_pieces=MAX_PIECES):
    """Shuffle with a uniform number of pieces in ``1..max_pieces``.

    Widths are Dirichlet(1), the permutation is uniform and each flag is
    ``+-1`` with equal probability.
    """
    n = int(rng.integers(1, max_pieces + 1))
    widths = rng.dirichlet(np.ones(n))
    pi = rng.permutation(n) + 1
    omega = rng.choice([-1, 1], size=n)
    return ShuffleOfM(np.cumsum(widths)[:-1].clip(0.0, 1.0), pi, omega)


def sinkhorn(matrix, iterations=500, tol=1e-13):
    """Scale a positive matrix to be doubly stochastic by alternating normalization."""
    a = np.asarray(matrix, dtype=float).copy()
    for _ in range(iterations):
        a /= a.sum(axis=1, keepdims=True)
        a /= a.sum(axis=0, keepdims=True)
        if np.max(np.abs(a.sum(axis=1) - 1.0)) < tol:
            break
    return a


def random_ds_shuffle(rng, sizes=(2, 4, 6)):
    """Straight doubly symmetric shuffle with ``m^2`` pieces, ``m`` drawn from ``sizes``.

    A random positive ``m x m`` matrix is made doubly stochastic, averaged
    over both diagonal reflections and divided by ``m``: the cell masses of a
    doubly symmetric checkerboard copula.  The shuffle built from them is the
    grid approximation of that copula.  A random log-scale spread makes some
    draws nearly concentrated on a few cells.
    """
    m = int(rng.choice(sizes))
    spread = rng.uniform(0.0, 4.0)
    raw = np.exp(spread * rng.standard_normal((m, m)))
    cells = symmetric_cell_masses(sinkhorn(raw)) / m
    return shuffle_from_cell_masses(cells)


def _grid_param(index, count, lo, hi):
    if count <= 1:
        return lo
    return lo + (hi - lo) * (index % count) / (count - 1)


def gen_random_shuffle(index, rng, count=None):
    s = random_shuffle(rng)
    return s, f"random-shuffle#{index}(n={s.n})"


def gen_random_ds_shuffle(index, rng, count=None):
    s = random_ds_shuffle(rng)
    return s, f"random-ds-shuffle#{index}(n={s.n})"


def gen_family_ca(index, rng, count=101):
    a = _grid_param(index, count, 0.0, 0.5)
    return family_Ca(a), f"family-Ca(a={a!r})"


def gen_family_cn(index, rng, count=CN_MAX):
    n = index % min(count, CN_MAX) + 1
    return family_Cn(n), f"family-Cn(n={n})"


def gen_kdelta_a(index, rng, count=101):
    a = _grid_param(index, count, 0.25, 0.5)
    return kdelta_a(a), f"Kdelta-a(a={a!r})"


def gen_mixture(index, rng, count=None):
    """Random mixture of two or three shuffles, ``C_n`` copulas or ``Pi``."""
    k = int(rng.integers(2, 4))
    comps = []
    for _ in range(k):
        kind = rng.integers(0, 4)
        if kind == 0:
            comps.append(random_shuffle(rng, 12))
        elif kind == 1:
            comps.append(random_ds_shuffle(rng, (2, 4)))
        elif kind == 2:
            comps.append(family_Cn(int(rng.integers(1, 8))))
        else:
            comps.append(PI)
    weights = rng.dirichlet(np.ones(k))
    return MixtureCopula(list(zip(weights, comps))), f"mixtures#{index}(k={k})"


GENERATORS = {
    "random-shuffle": gen_random_shuffle,
    "random-ds-shuffle": gen_random_ds_shuffle,
    "family-Ca": gen_family_ca,
    "family-Cn": gen_family_cn,
    "Kdelta-a": gen_kdelta_a,
    "mixtures": gen_mixture,
}

#: Generators that map an index to a grid parameter; they produce at most
#: this many distinct copulas.
GRID_SIZES = {"family-Ca": 101, "family-Cn": CN_MAX, "Kdelta-a": 101}


def index_rng(seed, generator, index):
    """Independent stream per (seed, generator, index), so results do not depend on order."""
    gid = sorted(GENERATORS).index(generator)
    return np.random.default_rng([int(seed), gid, int(index)])


def generate(generator, count, seed=0):
    """Yield ``(copula, source)`` pairs from one named generator."""
    if generator not in GENERATORS:
        raise DomainError(f"unknown generator {generator!r}; choose from {sorted(GENERATORS)}")
    fn = GENERATORS[generator]
    size = min(count, GRID_SIZES[generator]) if generator in GRID_SIZES else count
    for i in range(size):
        yield fn(i, index_rng(seed, generator, i), size)
