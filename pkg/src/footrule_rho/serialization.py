"""JSON descriptors of copulas.

Accepted forms::

    {"n": 3, "splits": [0.25, 0.75], "pi": [3, 2, 1], "omega": [-1, 1, -1]}
    {"builtin": "M" | "W" | "Pi"}
    {"mixture": [{"weight": 0.5, "copula": {...}}, ...]}
    {"family": "Ca", "a": 0.25}
    {"family": "Cn", "n": 3}
    {"family": "Kdelta_a", "a": 0.3}
    {"family": "smooth", "s": 0.5}
    {"family": "ordinal", "intervals": [[0, 0.5], ...], "components": [{...}, ...]}
    {"diagonal": [[0, 0], [0.3, 0.1], ..., [1, 1]]}
    {"two_diagonal": [[0, 0], ..., [0.5, 0.2]]}
    {"bernstein": {...}, "degree": 10}
    {"transform": "sigma1", "copula": {...}}

``diagonal`` builds the diagonal copula of a piecewise-linear symmetric
diagonal; ``two_diagonal`` the copula with all mass on the two diagonals,
from its diagonal on ``[0, 1]`` or on ``[0, 1/2]``.
"""
import json
import os

from .copulas import (M, PI, TRANSFORMS, W, BernsteinCopula, Independence, MixtureCopula,
                      ShuffleOfM, TransformedCopula, bernstein, transform)
from .exceptions import InvalidCopulaError
from .extremal import (DiagonalCopula, OrdinalSum, SymmetricDiagonal, TwoDiagonalCopula,
                       family_Ca, family_Cn, kdelta_a, ordinal_sum, smooth_diagonal)

BUILTINS = {"M": M, "W": W, "Pi": PI}


def _need(obj, key, kind=None):
    if key not in obj:
        raise InvalidCopulaError(f"missing key {key!r} in {sorted(obj)}")
    val = obj[key]
    if isinstance(val, bool) or (kind is not None and not isinstance(val, kind)):
        raise InvalidCopulaError(f"key {key!r} has the wrong type: {val!r}")
    return val


def _number(obj, key):
    return float(_need(obj, key, (int, float)))


def from_dict(obj):
    """Copula described by a parsed JSON object."""
    if not isinstance(obj, dict):
        raise InvalidCopulaError(f"a copula descriptor must be a JSON object, not {type(obj).__name__}")
    if "builtin" in obj:
        name = obj["builtin"]
        if name not in BUILTINS:
            raise InvalidCopulaError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        return BUILTINS[name]
    if "mixture" in obj:
        parts = _need(obj, "mixture", list)
        comps = []
        for p in parts:
            if not isinstance(p, dict):
                raise InvalidCopulaError("mixture entries must be objects")
            comps.append((_number(p, "weight"), from_dict(_need(p, "copula", dict))))
        return MixtureCopula(comps)
    if "family" in obj:
        return _family(obj)
    if "diagonal" in obj:
        return DiagonalCopula(SymmetricDiagonal.piecewise_linear(_points(obj, "diagonal")))
    if "two_diagonal" in obj:
        pts = _points(obj, "two_diagonal")
        if abs(max(p[0] for p in pts) - 0.5) < 1e-12:
            delta = SymmetricDiagonal.from_half(pts)
        else:
            delta = SymmetricDiagonal.piecewise_linear(pts)
        return TwoDiagonalCopula(delta)
    if "bernstein" in obj:
        return bernstein(from_dict(_need(obj, "bernstein", dict)), int(_number(obj, "degree")))
    if "transform" in obj:
        which = _need(obj, "transform", str)
        if which not in TRANSFORMS:
            raise InvalidCopulaError(f"unknown transform {which!r}")
        return transform(from_dict(_need(obj, "copula", dict)), which)
    if "pi" in obj:
        n = int(_number(obj, "n"))
        splits = _need(obj, "splits", list)
        pi = _need(obj, "pi", list)
        omega = _need(obj, "omega", list)
        if len(pi) != n:
            raise InvalidCopulaError(f"n = {n} but pi has {len(pi)} entries")
        for v in splits + pi + omega:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InvalidCopulaError(f"non-numeric entry {v!r} in shuffle descriptor")
        for v in pi + omega:
            if v != int(v):
                raise InvalidCopulaError(f"pi and omega entries must be integers, got {v!r}")
        return ShuffleOfM(splits, [int(v) for v in pi], [int(v) for v in omega])
    raise InvalidCopulaError(f"unrecognized copula descriptor with keys {sorted(obj)}")


def _points(obj, key):
    pts = _need(obj, key, list)
    out = []
    for p in pts:
        if not isinstance(p, list) or len(p) != 2 or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in p):
            raise InvalidCopulaError(f"{key} entries must be [u, value] pairs, got {p!r}")
        out.append((float(p[0]), float(p[1])))
    return out


def _family(obj):
    name = obj["family"]
    if name == "Ca":
        return family_Ca(_number(obj, "a"))
    if name == "Cn":
        n = _number(obj, "n")
        return family_Cn(int(n) if n == int(n) else n)
    if name == "Kdelta_a":
        return kdelta_a(_number(obj, "a"))
    if name == "smooth":
        return DiagonalCopula(smooth_diagonal(_number(obj, "s")))
    if name == "ordinal":
        intervals = _need(obj, "intervals", list)
        comps = [from_dict(c) for c in _need(obj, "components", list)]
        try:
            iv = [(float(a), float(b)) for a, b in intervals]
        except (TypeError, ValueError) as exc:
            raise InvalidCopulaError(f"intervals must be [a, b] pairs: {exc}") from exc
        return ordinal_sum(iv, comps)
    raise InvalidCopulaError(f"unknown family {name!r}")


def loads(text):
    """Parse a JSON string into a copula."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidCopulaError(f"malformed JSON: {exc}") from exc
    return from_dict(obj)


def load(arg):
    """Copula from an inline JSON string or the path of a JSON file."""
    text = arg
    if not arg.lstrip().startswith("{"):
        if not os.path.exists(arg):
            raise InvalidCopulaError(f"{arg!r} is neither inline JSON nor an existing file")
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    return loads(text)


def to_dict(c):
    """JSON object describing ``c``; inverse of :func:`from_dict`."""
    if isinstance(c, ShuffleOfM):
        return {"n": c.n, "splits": [float(v) for v in c.splits],
                "pi": [int(v) for v in c.pi], "omega": [int(v) for v in c.omega]}
    if isinstance(c, Independence):
        return {"builtin": "Pi"}
    if isinstance(c, MixtureCopula):
        return {"mixture": [{"weight": float(w), "copula": to_dict(comp)}
                            for w, comp in c.components]}
    if isinstance(c, DiagonalCopula):
        d = c.delta
        if d.params is not None:
            return dict(d.params)
        if d.is_piecewise_linear:
            return {"diagonal": [[float(u), float(v)] for u, v in zip(d.knots, d.values)]}
    if isinstance(c, TwoDiagonalCopula) and c.delta.is_piecewise_linear:
        d = c.delta
        return {"two_diagonal": [[float(u), float(v)] for u, v in zip(d.knots, d.values)]}
    if isinstance(c, OrdinalSum):
        return {"family": "ordinal", "intervals": [list(iv) for iv in c.intervals],
                "components": [to_dict(comp) for comp in c.components]}
    if isinstance(c, BernsteinCopula):
        return {"bernstein": to_dict(c.base), "degree": c.degree}
    if isinstance(c, TransformedCopula):
        return {"transform": c.which, "copula": to_dict(c.base)}
    raise InvalidCopulaError(f"no JSON form for {c!r}")


def dumps(c, **kwargs):
    return json.dumps(to_dict(c), **kwargs)
