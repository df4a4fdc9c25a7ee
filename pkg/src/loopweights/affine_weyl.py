"""Affine roots, alcoves and the affine Weyl group ``Hom(S^1, T) x| W``.

An element is stored as ``(translation, weyl)`` and acts on the Cartan algebra
by ``x -> weyl(x) + translation``; translations lie in the coroot lattice.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import (
    RootSystem,
    Vector,
    WeylElement,
    coroot,
    dot,
    reflect,
    reflection_matrix,
    vec,
)
from .errors import DomainError, ResourceError, SingularPointError

ALCOVE_CAP = 200_000


@dataclass(frozen=True)
class AffineRoot:
    """The affine root ``(k, alpha)``; it vanishes on ``alpha(x) = -k``."""

    k: int
    alpha: Tuple[int, ...]

    def value(self, x: Sequence) -> Fraction:
        return dot(self.alpha, x) + self.k


@dataclass(frozen=True)
class AffineWeylElement:
    translation: Tuple[int, ...]
    weyl: WeylElement

    @classmethod
    def identity(cls, n: int) -> "AffineWeylElement":
        return cls((0,) * n, WeylElement.identity(n))

    @classmethod
    def pure_translation(cls, xi: Sequence[int]) -> "AffineWeylElement":
        return cls(tuple(int(v) for v in xi), WeylElement.identity(len(xi)))

    def __call__(self, x: Sequence) -> Vector:
        return tuple(a + t for a, t in zip(self.weyl.apply(x), self.translation))

    def is_identity(self) -> bool:
        return not any(self.translation) and self.weyl.is_identity()


@dataclass(frozen=True)
class Alcove:
    address: AffineWeylElement
    sample_point: Vector


def _check_lattice(rs: RootSystem, t: Sequence) -> Tuple[int, ...]:
    if any(Fraction(v).denominator != 1 for v in t):
        raise DomainError(f"translation {tuple(t)} is not integral")
    t = tuple(int(v) for v in t)
    coeffs = [dot(t, w) for w in rs.fundamental_weights]
    if any(c.denominator != 1 for c in coeffs):
        raise DomainError(f"translation {t} is not in the coroot lattice")
    recon = [0] * rs.ambient_dim
    for c, a in zip(coeffs, rs.simple_roots):
        for i, ai in enumerate(a):
            recon[i] += int(c) * ai
    if tuple(recon) != t:
        raise DomainError(f"translation {t} is not in the coroot lattice")
    return t


def element(rs: RootSystem, translation: Sequence, weyl: Optional[WeylElement] = None) -> AffineWeylElement:
    """Validated constructor: translation must lie in the coroot lattice."""
    if len(translation) != rs.ambient_dim:
        raise DomainError("translation has the wrong dimension")
    weyl = weyl if weyl is not None else WeylElement.identity(rs.ambient_dim)
    return AffineWeylElement(_check_lattice(rs, translation), weyl)


def affine_reflect(rs: RootSystem, ar: AffineRoot, x: Sequence) -> Vector:
    """Reflection in ``H_{k,alpha}``: ``s_alpha(x) - k h_alpha``."""
    h = coroot(rs, ar.alpha)
    return tuple(a - ar.k * b for a, b in zip(reflect(rs, ar.alpha, x), h))


def reflection_element(rs: RootSystem, ar: AffineRoot) -> AffineWeylElement:
    h = coroot(rs, ar.alpha)
    return AffineWeylElement(tuple(int(-ar.k * v) for v in h), reflection_matrix(rs, ar.alpha))


def compose(g1: AffineWeylElement, g2: AffineWeylElement) -> AffineWeylElement:
    """``(t1, w1) o (t2, w2) = (t1 + w1 t2, w1 w2)``."""
    if g1.weyl.dim != g2.weyl.dim:
        raise DomainError("elements belong to different root systems")
    t = tuple(a + b for a, b in zip(g1.translation, g1.weyl.apply_int(g2.translation)))
    return AffineWeylElement(t, g1.weyl @ g2.weyl)


def inverse(g: AffineWeylElement) -> AffineWeylElement:
    winv = g.weyl.inverse()
    return AffineWeylElement(tuple(-v for v in winv.apply_int(g.translation)), winv)


def simple_affine_roots(rs: RootSystem) -> List[AffineRoot]:
    """Walls of the positive alcove: ``(0, alpha_i)`` and ``(1, -theta)``."""
    walls = [AffineRoot(0, a) for a in rs.simple_roots]
    walls.append(AffineRoot(1, tuple(-v for v in rs.highest_root)))
    return walls


def in_positive_alcove(rs: RootSystem, x: Sequence) -> str:
    """Return ``"interior"``, ``"wall"`` or ``"outside"``."""
    on_wall = False
    for a in rs.positive_roots:
        v = dot(a, x)
        if v < 0 or v > 1:
            return "outside"
        if v == 0 or v == 1:
            on_wall = True
    return "wall" if on_wall else "interior"


def is_regular(rs: RootSystem, x: Sequence) -> bool:
    """True when x lies on no hyperplane ``alpha(x) = -k``."""
    return all(dot(a, x).denominator != 1 for a in rs.positive_roots)


def reduce_to_alcove(rs: RootSystem, x: Sequence,
                     max_steps: int = 1_000_000) -> Tuple[Vector, AffineWeylElement, List[int]]:
    """Move a regular point into the positive alcove.

    Repeatedly reflects in the lowest-index violated wall of the positive
    alcove. Returns ``(x0, g, word)`` with ``g(x) == x0``; ``word`` lists wall
    indices (into :func:`simple_affine_roots`) in the order applied, so
    ``g = s_{word[-1]} o ... o s_{word[0]}``.
    """
    x = vec(x)
    if len(x) != rs.ambient_dim:
        raise DomainError("point has the wrong dimension")
    if not is_regular(rs, x):
        raise SingularPointError(f"{tuple(map(str, x))} lies on an affine root hyperplane")
    walls = simple_affine_roots(rs)
    elements = [reflection_element(rs, w) for w in walls]
    g = AffineWeylElement.identity(rs.ambient_dim)
    word: List[int] = []
    cur = x
    for _ in range(max_steps):
        violated = next((i for i, w in enumerate(walls) if w.value(cur) < 0), None)
        if violated is None:
            return cur, g, word
        cur = affine_reflect(rs, walls[violated], cur)
        g = compose(elements[violated], g)
        word.append(violated)
    raise ResourceError("alcove reduction did not terminate")


def word_to_element(rs: RootSystem, word: Sequence[int]) -> AffineWeylElement:
    elements = [reflection_element(rs, w) for w in simple_affine_roots(rs)]
    g = AffineWeylElement.identity(rs.ambient_dim)
    for i in word:
        g = compose(elements[i], g)
    return g


def fundamental_alcove_vertices(rs: RootSystem) -> List[Vector]:
    """Vertices ``0`` and ``omega_i / comark_i`` of the positive alcove."""
    n = rs.ambient_dim
    verts = [(Fraction(0),) * n]
    for w, m in zip(rs.fundamental_weights, rs.comarks):
        verts.append(tuple(v / m for v in w))
    return verts


def _barycenter(points: Sequence[Vector]) -> Vector:
    k = len(points)
    return tuple(sum(coords, Fraction(0)) / k for coords in zip(*points))


def positive_alcove_sample(rs: RootSystem) -> Vector:
    return _barycenter(fundamental_alcove_vertices(rs))


def _circumradius_sq(rs: RootSystem) -> Fraction:
    c = positive_alcove_sample(rs)
    return max(dot(tuple(a - b for a, b in zip(v, c)), tuple(a - b for a, b in zip(v, c)))
               for v in fundamental_alcove_vertices(rs))


def enumerate_alcoves(rs: RootSystem, radius, cap: int = ALCOVE_CAP) -> List[Alcove]:
    """Alcoves whose barycenter lies in the closed ball of the given radius.

    Group route: breadth-first search over W_aff from the positive alcove,
    crossing one wall at a time. Exploration extends one alcove diameter past
    the ball, so every alcove meeting the ball is reached.
    """
    radius = Fraction(radius)
    if radius < 0:
        raise DomainError("radius must be nonnegative")
    r2 = radius * radius
    rho = math.sqrt(_circumradius_sq(rs))
    explore = (float(radius) + 2 * rho) ** 2 * (1 + 1e-9) + 1e-12
    c0 = positive_alcove_sample(rs)
    walls = simple_affine_roots(rs)
    gens = [reflection_element(rs, w) for w in walls]
    start = AffineWeylElement.identity(rs.ambient_dim)
    seen = {start}
    queue = deque([start])
    found: Dict[AffineWeylElement, Vector] = {}
    while queue:
        g = queue.popleft()
        p = g(c0)
        d2 = dot(p, p)
        if d2 <= r2:
            found[g] = p
        # right multiplication by a simple reflection crosses one wall of g(C0)
        for s in gens:
            h = compose(g, s)
            if h in seen:
                continue
            q = h(c0)
            if float(dot(q, q)) <= explore:
                seen.add(h)
                if len(seen) > cap:
                    raise ResourceError(f"alcove enumeration exceeded cap of {cap}")
                queue.append(h)
    alcoves = [Alcove(g, p) for g, p in found.items()]
    alcoves.sort(key=lambda a: (dot(a.sample_point, a.sample_point), a.sample_point))
    return alcoves


def alcove_signature(rs: RootSystem, x: Sequence) -> Tuple[int, ...]:
    """``floor(alpha(x))`` over the positive roots; identifies the alcove of a regular x."""
    return tuple(math.floor(dot(a, x)) for a in rs.positive_roots)


def discover_alcoves_geometric(rs: RootSystem, radius) -> List[Vector]:
    """Barycenters of alcoves within the ball, found without using the group.

    Scans a rational grid in simple-root coordinates ``y_i = alpha_i(x)`` fine
    enough to contain every alcove barycenter, groups regular grid points by
    their alcove signature, and computes each alcove's vertices by solving
    for intersections of its bounding hyperplanes. The grid has
    ``O((denom * radius)^rank)`` points, so this is meant for rank <= 3.
    """
    radius = Fraction(radius)
    r2 = radius * radius
    l = rs.rank
    denom = (l + 1) * math.lcm(*rs.comarks)
    rho = math.sqrt(_circumradius_sq(rs))
    # |alpha_i(x)| <= sqrt(2) |x|
    bound = math.ceil(math.sqrt(2) * (float(radius) + rho) * denom) + 1
    fw = rs.fundamental_weights
    pos_coeffs = [tuple(int(dot(a, w)) for w in fw) for a in rs.positive_roots]
    systems = _plane_systems(pos_coeffs, l)
    # a grid point and its alcove's barycenter are at most one diameter apart
    reach = (float(radius) + 2 * rho) ** 2 * (1 + 1e-9) + 1e-12
    gram = [[float(dot(a, b)) for b in fw] for a in fw]
    seen_sigs = set()
    barycenters = []
    for ys in product(range(-bound, bound + 1), repeat=l):
        if sum(gram[i][j] * ys[i] * ys[j] for i in range(l) for j in range(l)) > reach * denom * denom:
            continue
        y = [Fraction(v, denom) for v in ys]
        vals = [sum((c * yi for c, yi in zip(cs, y)), Fraction(0)) for cs in pos_coeffs]
        if any(v.denominator == 1 for v in vals):
            continue
        sig = tuple(math.floor(v) for v in vals)
        if sig in seen_sigs:
            continue
        seen_sigs.add(sig)
        verts = _alcove_vertices(pos_coeffs, sig, l, systems)
        cy = _barycenter(verts)
        x = tuple(sum((cy[i] * fw[i][k] for i in range(l)), Fraction(0)) for k in range(rs.ambient_dim))
        if dot(x, x) <= r2:
            barycenters.append(x)
    barycenters.sort(key=lambda p: (dot(p, p), p))
    return barycenters


def _plane_systems(pos_coeffs, l) -> List[Tuple[Tuple[int, ...], int, List[List[int]]]]:
    """Each independent l-subset of normals with its integer adjugate and determinant."""
    out = []
    for idx in combinations(range(len(pos_coeffs)), l):
        a = [list(pos_coeffs[i]) for i in idx]
        inv = _inverse_exact(a)
        if inv is None:
            continue
        det = math.lcm(*(v.denominator for row in inv for v in row))
        adj = [[int(v * det) for v in row] for row in inv]
        out.append((idx, det, adj))
    return out


def _alcove_vertices(pos_coeffs, sig, l, systems) -> List[Vector]:
    verts = set()
    for idx, det, adj in systems:
        for offs in product((0, 1), repeat=l):
            rhs = [sig[i] + o for i, o in zip(idx, offs)]
            num = [sum(adj[r][c] * rhs[c] for c in range(l)) for r in range(l)]
            # vertex y = num / det must satisfy s <= alpha(y) <= s + 1 for every positive root
            if all(det * s <= sum(c * v for c, v in zip(cs, num)) <= det * (s + 1)
                   for cs, s in zip(pos_coeffs, sig)):
                verts.add(tuple(Fraction(v, det) for v in num))
    return sorted(verts)


def _inverse_exact(a: List[List[int]]) -> Optional[List[List[Fraction]]]:
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
