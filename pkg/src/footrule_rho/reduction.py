"""Pushing the mass of a doubly symmetric shuffle onto the two diagonals.

A straight doubly symmetric shuffle approximating a doubly symmetric copula
is built from grid-cell masses.  Each off-diagonal square of such a shuffle,
together with its three reflections, can then be moved onto the main or
opposite diagonal so that the diagonal mass ``q`` grows and the lower bound
gap ``f`` does not.  Repeating this ends in a two-diagonal copula.
"""
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .copulas import ShuffleOfM, is_doubly_symmetric_shuffle
from .exceptions import DomainError, NotDoublySymmetricError, ReductionError
from .measures import diagonal_mass, footrule, lower_bound_gap, spearman_rho

CASES = ("I", "II", "III", "IV")
DS_GRID = 101
DS_TOL = 1e-9
_TIE = 1e-12


def symmetric_cell_masses(masses):
    """Average an ``m x m`` cell-mass array over both diagonal reflections.

    ``masses[k, j]`` is the mass of the cell in column ``k`` and row ``j``.
    Reflection in the main diagonal swaps ``k`` and ``j``; reflection in the
    opposite diagonal sends ``(k, j)`` to ``(m-1-j, m-1-k)``.
    """
    v = np.asarray(masses, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DomainError("cell masses must form a square array")
    t = v.T
    return 0.25 * (v + t + t[::-1, ::-1] + v[::-1, ::-1])


def shuffle_from_cell_masses(masses):
    """Straight shuffle with one piece per grid cell.

    Piece ``i = m k + j`` (0-based) has width ``masses[k, j]`` and is sent to
    slot ``m j + k``, the piece of the transposed cell.  When every row and
    column of ``masses`` sums to ``1/m`` the piece lies in cell ``(k, j)`` of
    the uniform grid.
    """
    v = np.clip(np.asarray(masses, dtype=float), 0.0, None)
    m = v.shape[0]
    total = v.sum()
    if total <= 0.0:
        raise DomainError("cell masses sum to zero")
    v = v / total
    widths = v.ravel()
    kk, jj = np.divmod(np.arange(m * m), m)
    pi = m * jj + kk + 1
    splits = np.cumsum(widths)[:-1]
    return ShuffleOfM(np.clip(splits, 0.0, 1.0), pi, np.ones(m * m, dtype=int))


def doubly_symmetric_defect(c, grid=DS_GRID):
    """Largest of ``|C - C^t|`` and ``|C - survival(C)|`` on a ``grid x grid`` lattice."""
    g = np.linspace(0.0, 1.0, grid)
    u, v = np.meshgrid(g, g, indexing="ij")
    base = c.cdf(u.ravel(), v.ravel())
    trans = c.cdf(v.ravel(), u.ravel())
    surv = u.ravel() + v.ravel() - 1.0 + c.cdf(1.0 - u.ravel(), 1.0 - v.ravel())
    return float(max(np.max(np.abs(base - trans)), np.max(np.abs(base - surv))))


def approx_doubly_symmetric(c, m):
    """Straight doubly symmetric shuffle with ``m^2`` pieces approximating ``c``.

    Piece widths are the ``c``-volumes of the cells of the uniform ``m x m``
    grid.  The volumes are averaged over both diagonal reflections first, so
    that rounding in the input cannot break the exact width symmetry; for a
    doubly symmetric ``c`` this changes them by rounding error only.
    """
    if int(m) != m or m < 2 or m % 2:
        raise DomainError(f"m = {m} must be an even positive integer")
    m = int(m)
    defect = doubly_symmetric_defect(c)
    if defect > DS_TOL:
        raise NotDoublySymmetricError(
            f"copula is not doubly symmetric (defect {defect:.3e} on a {DS_GRID}x{DS_GRID} grid)")
    g = np.arange(m + 1) / m
    cdf = c.cdf(*[a.ravel() for a in np.meshgrid(g, g, indexing="ij")]).reshape(m + 1, m + 1)
    cells = np.diff(np.diff(cdf, axis=0), axis=1)
    return shuffle_from_cell_masses(symmetric_cell_masses(cells))


# Orbits -----------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitSquare:
    """A square ``[a, a + x] x [b, b + x]`` carrying piece ``index`` and its orbit.

    ``index`` is 1-based; ``orbit`` holds ``(i, pi(i), n+1-i, pi(n+1-i))``
    without repeats.  ``case`` is one of ``"I"``-``"IV"`` or
    ``"on-diagonal"``.
    """

    index: int
    a: float
    b: float
    x: float
    orbit: tuple
    case: str
    phi: float = float("nan")

    @property
    def steppable(self):
        return self.case in CASES


def _on_diagonal(s, i):
    """Piece ``i`` (1-based) carries no mass or lies on one of the diagonals."""
    n = s.n
    p = int(s.pi[i - 1])
    om = int(s.omega[i - 1])
    return s.widths[i - 1] == 0.0 or (om == 1 and p == i) or (om == -1 and p == n + 1 - i)


def _orbit(s, i):
    n = s.n
    pi = s.pi
    members = [i, int(pi[i - 1]), n + 1 - i, int(pi[n - i])]
    return tuple(dict.fromkeys(members))


def classify_orbit(s, i, phi=None):
    """Locate the orbit of piece ``i`` and the case of the mass-shifting step.

    The representative is the orbit member ``j`` with ``j < pi(j) <= n+1-j``,
    i.e. a square with ``a < b < 1 - a``.  Case I when ``pi(j) = n+1-j``
    (checked first), II when ``pi(j) > n/2``, otherwise III or IV according
    to ``b >= a + sqrt((1 + 2 phi) / 3)`` with ``phi`` the footrule of ``s``.
    """
    n = s.n
    if not 1 <= i <= n:
        raise DomainError(f"piece index {i} is outside 1..{n}")
    if _on_diagonal(s, i):
        w = float(s.widths[i - 1])
        a = float(s.points[i - 1])
        b = float(s.points[int(s.pi[i - 1]) - 1])
        return OrbitSquare(i, a, b, w, _orbit(s, i), "on-diagonal")
    orbit = _orbit(s, i)
    if any(int(s.omega[j - 1]) != 1 for j in orbit):
        raise ReductionError(
            f"piece {i} has a decreasing segment off the opposite diagonal")
    reps = [j for j in orbit if j < int(s.pi[j - 1]) <= n + 1 - j]
    if len(reps) != 1:
        raise ReductionError(f"no unique representative with a < b < 1 - a in orbit {orbit}")
    j = reps[0]
    p = int(s.pi[j - 1])
    a = float(s.points[j - 1])
    b = float(s.points[p - 1])
    x = float(s.widths[j - 1])
    if phi is None:
        phi = footrule(s)
    if p == n + 1 - j:
        case = "I"
    elif p > n // 2:
        case = "II"
    elif b >= a + math.sqrt(max(1.0 + 2.0 * phi, 0.0) / 3.0) - _TIE:
        case = "III"
    else:
        case = "IV"
    return OrbitSquare(j, a, b, x, _orbit(s, j), case, float(phi))


def apply_step(s, orbit):
    """Move the mass of ``orbit`` onto a diagonal; the splits stay unchanged.

    Case I flips the two pieces to decreasing (onto the opposite diagonal);
    Cases II and III send every orbit member ``j`` to slot ``n+1-j``,
    decreasing; Case IV sends each member to its own slot on the main
    diagonal.
    """
    if not orbit.steppable:
        raise ReductionError(f"orbit of piece {orbit.index} is not steppable ({orbit.case})")
    n = s.n
    pi = np.array(s.pi)
    om = np.array(s.omega)
    idx = np.array(orbit.orbit) - 1
    if orbit.case == "I":
        om[[orbit.index - 1, n - orbit.index]] = -1
    elif orbit.case in ("II", "III"):
        pi[idx] = n - idx
        om[idx] = -1
    else:
        pi[idx] = idx + 1
    return ShuffleOfM(s.splits, pi, om)


# Driver -----------------------------------------------------------------------

@dataclass(frozen=True)
class StepState:
    phi: float
    rho: float
    f: float
    q: float


def _state(s):
    phi = footrule(s)
    rho = spearman_rho(s)
    return StepState(phi, rho, lower_bound_gap(s), diagonal_mass(s))


@dataclass(frozen=True)
class ReductionStep:
    """One application of the mass-shifting step."""

    case: str
    index: int
    orbit: tuple
    a: float
    b: float
    x: float
    before: StepState
    after: StepState

    def predicted(self):
        """Closed-form changes of the step, as ``{quantity: before - after}``.

        Only the quantities with a closed form for this case are present.
        """
        a, b, x = self.a, self.b, self.x
        frustum = 24.0 * x * (1.0 - a - b - x) ** 2 + 8.0 * x**3
        if self.case == "I":
            return {"f": 4.0 * x**3, "rho": 4.0 * x**3, "phi": 0.0, "q": -2.0 * x}
        if self.case == "II":
            return {"rho": frustum, "phi": 0.0, "q": -4.0 * x}
        if self.case == "III":
            return {"rho": frustum, "phi": 12.0 * x * (1.0 - 2.0 * b - x), "q": -4.0 * x}
        return {"rho": -24.0 * x * (b - a) ** 2, "phi": -12.0 * x * (b - a), "q": -4.0 * x}

    def to_dict(self):
        return {"case": self.case, "index": self.index, "orbit": list(self.orbit),
                "a": self.a, "b": self.b, "x": self.x,
                "before": asdict(self.before), "after": asdict(self.after)}


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    initial: StepState | None = None
    final: StepState | None = None

    def to_jsonl(self):
        return "".join(json.dumps(st.to_dict()) + "\n" for st in self.steps)

    def write_jsonl(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_jsonl())


def steppable_orbits(s):
    """Representatives of all orbits that are off both diagonals and carry mass."""
    phi = footrule(s)
    seen = set()
    out = []
    for i in range(1, s.n + 1):
        if i in seen or _on_diagonal(s, i):
            continue
        sq = classify_orbit(s, i, phi)
        seen.update(sq.orbit)
        out.append(sq)
    return out


def largest_first(orbits):
    return min(orbits, key=lambda o: (-o.x, o.index))


def reduce_to_diagonals(s, choose=largest_first, check=True):
    """Apply mass-shifting steps until all mass lies on the two diagonals.

    Parameters
    ----------
    s : ShuffleOfM
        Doubly symmetric shuffle whose decreasing pieces, if any, lie on the
        opposite diagonal (a straight shuffle qualifies).
    choose : callable
        Picks the next orbit from the list of steppable ones; by default the
        largest square, ties broken by index.
    check : bool
        Verify the doubly symmetric structure of the input.

    Returns
    -------
    (ShuffleOfM, ReductionTrace)
    """
    if check:
        rep = is_doubly_symmetric_shuffle(s)
        if not rep:
            raise NotDoublySymmetricError(
                f"not a doubly symmetric shuffle: clause ({rep.clause}) {rep.detail}")
    trace = ReductionTrace()
    state = _state(s)
    trace.initial = state
    for _ in range(s.n + 1):
        orbits = steppable_orbits(s)
        if not orbits:
            if state.q < 1.0 - 1e-12:
                raise ReductionError(f"q = {state.q} < 1 but no orbit can be stepped")
            trace.final = state
            return s, trace
        sq = choose(orbits)
        nxt = apply_step(s, sq)
        after = _state(nxt)
        trace.steps.append(ReductionStep(sq.case, sq.index, sq.orbit, sq.a, sq.b, sq.x,
                                         state, after))
        s, state = nxt, after
    raise ReductionError(f"step limit {s.n + 1} reached; an invariant must have failed")

