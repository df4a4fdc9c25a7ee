"""Level/weight/energy lattice of ``T0 x T x S^1`` and its affine Weyl action.

A weight is ``(level h, lam, energy n)``. For type A, ``lam`` is an integer
character of the diagonal torus of SU(n), i.e. a vector of ``Z^n`` modulo the
all-ones vector; the canonical representative has last coordinate 0. The inner
product identifies coroots with roots (``h_alpha -> alpha``), so a coroot
lattice vector ``xi`` is its own transport ``xi*``.

The quadratic form ``|lam|^2 - 2 n h`` is invariant under the action and is
what :func:`norm_squared` returns.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from . import kernels
from .affine_weyl import _check_lattice
from .cartan import RootSystem, Vector, WeylElement, coroot, dot, vec
from .errors import DomainError

ON_PARABOLA = "on_parabola"
INTERIOR = "interior"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Weight:
    level: int
    lam: Vector
    energy: int

    def as_tuple(self) -> Tuple[int, Vector, int]:
        return (self.level, self.lam, self.energy)


@dataclass(frozen=True)
class AffineCoroot:
    """Coroot ``(-m |h_alpha|^2 / 2, h_alpha)`` of the affine root ``(m, alpha)``."""

    m: int
    coroot: Vector

    @property
    def scalar(self) -> Fraction:
        return -self.m * dot(self.coroot, self.coroot) / 2


def affine_coroot(rs: RootSystem, m: int, alpha: Sequence[int]) -> AffineCoroot:
    return AffineCoroot(int(m), coroot(rs, alpha))


def canonical_lam(rs: RootSystem, lam: Sequence) -> Vector:
    lam = vec(lam)
    if len(lam) != rs.ambient_dim:
        raise DomainError(f"weight needs {rs.ambient_dim} coordinates, got {len(lam)}")
    if rs.family == "A":
        last = lam[-1]
        lam = tuple(v - last for v in lam)
    return lam


def make_weight(rs: RootSystem, level: int, lam: Sequence, energy: int = 0) -> Weight:
    """Canonicalize and validate a weight (lam must pair integrally with coroots)."""
    lam = canonical_lam(rs, lam)
    for a in rs.simple_roots:
        if dot(lam, coroot(rs, a)).denominator != 1:
            raise DomainError(f"{tuple(map(str, lam))} is not in the weight lattice of {rs.name}")
    return Weight(int(level), lam, int(energy))


def su2_weight(level: int, mu: int, energy: int = 0) -> Weight:
    """SU(2) weight from the integer mu of the character diag(z, 1/z) -> z^mu."""
    return Weight(int(level), (Fraction(mu), Fraction(0)), int(energy))


def dual_norm_sq(rs: RootSystem, lam: Sequence) -> Fraction:
    """``|lam|^2`` for lam in t*, via the sum-zero projection for type A."""
    p = rs.canonical(lam)
    return dot(p, p)


def act_translation(rs: RootSystem, xi: Sequence, w: Weight) -> Weight:
    """``xi . (h, lam, n) = (h, lam + h xi*, n + lam(xi) + h |xi|^2 / 2)``."""
    xi = _check_lattice(rs, xi)
    h = w.level
    pairing = dot(w.lam, xi)
    shift = Fraction(h) * dot(xi, xi) / 2
    energy = w.energy + pairing + shift
    if energy.denominator != 1:
        raise DomainError("energy shift is not integral")
    lam = canonical_lam(rs, tuple(a + h * b for a, b in zip(w.lam, xi)))
    return Weight(h, lam, int(energy))


def act_weyl(rs: RootSystem, w_elt: WeylElement, w: Weight) -> Weight:
    return Weight(w.level, canonical_lam(rs, w_elt.apply(w.lam)), w.energy)


def pair_with_affine_coroot(w: Weight, ac: AffineCoroot) -> Fraction:
    """``lam(h_alpha) - h m |h_alpha|^2 / 2``; the energy does not enter."""
    return dot(w.lam, ac.coroot) + w.level * ac.scalar


def is_antidominant(rs: RootSystem, w: Weight) -> bool:
    for a in rs.positive_roots:
        h = coroot(rs, a)
        p = dot(w.lam, h)
        if p > 0 or p < -w.level * dot(h, h) / 2:
            return False
    return True


def fundamental_affine_weights(rs: RootSystem) -> List[Weight]:
    """``(1, 0, 0)`` and ``(<omega_i, theta>, -omega_i, 0)``."""
    out = [make_weight(rs, 1, (0,) * rs.ambient_dim, 0)]
    theta_h = coroot(rs, rs.highest_root)
    for om in rs.fundamental_weights:
        level = dot(om, theta_h)
        out.append(make_weight(rs, int(level), tuple(-v for v in om), 0))
    return out


def enumerate_antidominant(rs: RootSystem, h: int) -> List[Weight]:
    """Every antidominant ``(h, lam, 0)``, as nonnegative combinations of fundamental weights.

    In simple-coroot coordinates ``c_i = -lam(h_{alpha_i}) >= 0`` the only other
    constraint is ``sum_i comark_i c_i <= h``.
    """
    h = int(h)
    if h < 0:
        raise DomainError("level must be nonnegative")
    fw = rs.fundamental_weights
    marks = rs.comarks
    out = []

    def rec(i: int, budget: int, coeffs: List[int]) -> None:
        if i == len(marks):
            lam = [Fraction(0)] * rs.ambient_dim
            for c, om in zip(coeffs, fw):
                for k, v in enumerate(om):
                    lam[k] -= c * v
            out.append(make_weight(rs, h, lam, 0))
            return
        for c in range(budget // marks[i] + 1):
            coeffs.append(c)
            rec(i + 1, budget - c * marks[i], coeffs)
            coeffs.pop()

    rec(0, h, [])
    out.sort(key=lambda w: (dual_norm_sq(rs, w.lam), w.lam))
    return out


def orbit(rs: RootSystem, w: Weight, max_energy: int) -> List[Weight]:
    """All ``W_aff``-images of an antidominant weight with energy <= max_energy.

    Closure under all coroot translations and the simple reflections, pruned
    at the energy cap. Since each image's energy is fixed by ``|lam'|^2`` (the
    parabola), the pruned set is finite; using every coroot (not only simple
    ones) keeps the pruned closure connected. Sorted by (energy, lam).
    """
    max_energy = int(max_energy)
    if w.level == 0:
        if any(w.lam):
            raise DomainError("level-0 weight with nonzero lam has no positive-energy orbit")
        return [w] if w.energy <= max_energy else []
    if w.level < 0:
        raise DomainError("level must be positive")
    if not is_antidominant(rs, w):
        raise DomainError("orbit expects an antidominant (lowest) weight")
    if max_energy < w.energy:
        raise DomainError("max_energy is below the weight's own energy")
    lam = canonical_lam(rs, w.lam)
    scale = math.lcm(*(v.denominator for v in lam))
    lam_s = [int(v * scale) for v in lam]
    translations = [tuple(int(v) for v in coroot(rs, a)) for a in rs.roots]
    reflections = list(rs.simple_roots)
    raw = kernels.orbit_closure(lam_s, w.energy, w.level, scale, translations,
                                reflections, max_energy, rs.family == "A")
    return [Weight(w.level, tuple(Fraction(v, scale) for v in lam_v), e) for lam_v, e in raw]


def norm_squared(rs: RootSystem, w: Weight) -> Fraction:
    """``|lam|^2 - 2 n h``, constant on affine Weyl orbits."""
    return dual_norm_sq(rs, w.lam) - 2 * w.energy * w.level


def parabola_check(rs: RootSystem, lowest: Weight, candidate: Weight) -> str:
    """Place a candidate weight relative to the parabola of a lowest weight."""
    if lowest.level != candidate.level:
        raise DomainError("parabola check needs weights of the same level")
    lhs = dual_norm_sq(rs, candidate.lam)
    rhs = norm_squared(rs, lowest) + 2 * candidate.energy * candidate.level
    if lhs == rhs:
        return ON_PARABOLA
    return INTERIOR if lhs < rhs else OUTSIDE


def to_csv(weights: Iterable[Weight]) -> str:
    """One row per weight: lam coordinates, level, energy, multiplicity placeholder."""
    weights = list(weights)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = len(weights[0].lam) if weights else 0
    writer.writerow([f"lam{i}" for i in range(n)] + ["level", "energy", "multiplicity"])
    for w in weights:
        writer.writerow([_fmt(v) for v in w.lam] + [w.level, w.energy, ""])
    return buf.getvalue()


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
