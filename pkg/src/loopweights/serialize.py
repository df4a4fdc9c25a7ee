"""JSON encodings with exact rationals written as ``"p/q"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from .affine_weyl import Alcove, AffineWeylElement
from .cartan import RootSystem, build_root_system, coroot
from .errors import ConfigurationError
from .loopalg import LaurentLoop, gaussian, gaussian_parts
from .weights import Weight


def rational(q) -> Any:
    """Integers stay integers; other rationals become ``"p/q"``."""
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise ConfigurationError(f"not a rational: {v!r}")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"not a rational: {v!r}") from exc
    raise ConfigurationError(f"not a rational: {v!r}")


def vector(x: Sequence) -> List[Any]:
    return [rational(v) for v in x]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def weight_to_json(w: Weight) -> Dict[str, Any]:
    return {"level": w.level, "weight": vector(w.lam), "energy": w.energy}


def weight_from_json(d: Dict[str, Any]) -> Weight:
    try:
        lam = tuple(parse_rational(v) for v in d["weight"])
        return Weight(int(d["level"]), lam, int(d["energy"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed weight record: {exc}") from exc


def orbit_from_json(d: Dict[str, Any]) -> Tuple[Weight, List[Weight]]:
    """Read the ``orbit`` subcommand's JSON back into (lowest weight, orbit)."""
    try:
        return weight_from_json(d["lowest"]), [weight_from_json(w) for w in d["weights"]]
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed orbit record: {exc}") from exc


def root_system_to_json(rs: RootSystem) -> Dict[str, Any]:
    return {
        "family": rs.family,
        "rank": rs.rank,
        "ambient_dim": rs.ambient_dim,
        "roots": [vector(a) for a in rs.roots],
        "simple_roots": [vector(a) for a in rs.simple_roots],
        "coroots": [vector(coroot(rs, a)) for a in rs.roots],
        "fundamental_weights": [vector(w) for w in rs.fundamental_weights],
        "highest_root": vector(rs.highest_root),
        "comarks": list(rs.comarks),
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
    }


def root_system_from_json(d: Dict[str, Any]) -> RootSystem:
    """Rebuild from family and rank, then check the stored data matches."""
    try:
        rs = build_root_system(d["family"], int(d["rank"]))
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed root-system record: {exc}") from exc
    stored = [tuple(parse_rational(v) for v in a) for a in d.get("roots", [])]
    if stored and sorted(stored) != sorted(rs.roots):
        raise ConfigurationError("stored roots do not match the named root system")
    return rs


def element_to_json(g: AffineWeylElement) -> Dict[str, Any]:
    return {"translation": list(g.translation), "weyl": [list(r) for r in g.weyl.matrix]}


def alcove_to_json(a: Alcove) -> Dict[str, Any]:
    return {"address": element_to_json(a.address), "sample_point": [str(Fraction(v)) for v in a.sample_point]}


def _entry_to_json(v, exact: bool) -> List[Any]:
    if exact:
        re, im = gaussian_parts(v)
        return [rational(re), rational(im)]
    v = complex(v)
    return [float(v.real), float(v.imag)]


def loop_to_json(loop: LaurentLoop) -> Dict[str, Any]:
    terms = []
    for k in loop.degrees:
        m = loop.coefficient(k)
        terms.append({"degree": k, "matrix": [[_entry_to_json(v, loop.exact) for v in row] for row in m]})
    return {"size": loop.size, "terms": terms}


def _is_exact_scalar(v) -> bool:
    return isinstance(v, (int, str)) and not isinstance(v, bool)


def loop_from_json(d: Dict[str, Any], mode: str = "exact") -> LaurentLoop:
    """Read ``{size, terms: [{degree, matrix}]}``; entries are ``[re, im]`` pairs or bare reals.

    Exact when every number is an integer or a ``"p/q"`` string and ``mode`` is exact;
    complex128 otherwise.
    """
    try:
        n = int(d["size"])
        terms = d["terms"]
        raw = {}
        for t in terms:
            k = int(t["degree"])
            rows = t["matrix"]
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ConfigurationError(f"term of degree {k} is not {n}x{n}")
            entries = [[e if isinstance(e, list) else [e, 0] for e in r] for r in rows]
            if any(len(e) != 2 for r in entries for e in r):
                raise ConfigurationError("matrix entries must be numbers or [re, im] pairs")
            if k in raw:
                raise ConfigurationError(f"degree {k} appears twice")
            raw[k] = entries
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed loop record: {exc}") from exc
    if n < 1:
        raise ConfigurationError("loop size must be positive")
    exact = mode == "exact" and all(_is_exact_scalar(x) for m in raw.values() for r in m for e in r for x in e)
    coeffs = {}
    for k, m in raw.items():
        if exact:
            coeffs[k] = [[gaussian(parse_rational(re), parse_rational(im)) for re, im in r] for r in m]
        else:
            try:
                coeffs[k] = np.array([[complex(float(_num(re)), float(_num(im))) for re, im in r] for r in m])
            except (TypeError, ValueError) as exc:
                raise ConfigurationError(f"bad matrix entry: {exc}") from exc
    return LaurentLoop(coeffs, n, exact=exact)


def _num(v):
    return parse_rational(v) if isinstance(v, str) else v


def load_loop(path: str, mode: str = "exact") -> LaurentLoop:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read loop file {path}: {exc}") from exc
    return loop_from_json(data, mode)
