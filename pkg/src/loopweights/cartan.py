"""Exact root data for simply-laced compact groups (types A and D).

Vectors live in the ambient lattice: ``Z^(l+1)`` for ``A_l`` (the Lie algebra of
SU(l+1) is the sum-zero hyperplane) and ``Z^l`` for ``D_l``. Coordinates are
``fractions.Fraction`` throughout; no floating point is used here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from . import kernels
from .errors import ConfigurationError, DomainError

Vector = Tuple[Fraction, ...]
Root = Tuple[int, ...]

WEYL_CAP = 10**6


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise DomainError("dimension mismatch")
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def add(x: Sequence, y: Sequence) -> Vector:
    return tuple(Fraction(a) + b for a, b in zip(x, y))


def scale(c, x: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


@dataclass(frozen=True)
class WeylElement:
    """An orthogonal integer matrix acting on ambient coordinates."""

    matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, x: Sequence) -> Vector:
        return tuple(sum((Fraction(x[j]) * row[j] for j in range(len(row)) if row[j]), Fraction(0))
                     for row in self.matrix)

    def apply_int(self, x: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(row[j] * x[j] for j in range(len(row))) for row in self.matrix)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        n = self.dim
        return WeylElement(tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)))

    def inverse(self) -> "WeylElement":
        # orthogonal, so the inverse is the transpose
        return WeylElement(tuple(zip(*self.matrix)))

    def is_identity(self) -> bool:
        return self == WeylElement.identity(self.dim)


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    ambient_dim: int
    roots: Tuple[Root, ...]
    simple_root_indices: Tuple[int, ...]
    _positive: Tuple[Root, ...] = field(repr=False, compare=False, default=())

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(self.roots[i] for i in self.simple_root_indices)

    @property
    def positive_roots(self) -> Tuple[Root, ...]:
        return self._positive

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def is_root(self, alpha: Sequence) -> bool:
        try:
            key = tuple(int(a) for a in alpha)
        except (TypeError, ValueError):
            return False
        if any(Fraction(a) != b for a, b in zip(alpha, key)):
            return False
        return key in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        simple = self.simple_roots
        return tuple(tuple(int(2 * dot(a, b) / dot(b, b)) for b in simple) for a in simple)

    @cached_property
    def fundamental_weights(self) -> Tuple[Vector, ...]:
        return _fundamental_weights(self)

    @cached_property
    def highest_root(self) -> Root:
        return _highest_root(self)

    @cached_property
    def comarks(self) -> Tuple[int, ...]:
        """Coefficients of the highest coroot in the simple coroots."""
        return tuple(int(c) for c in simple_coefficients(self, coroot(self, self.highest_root)))

    def canonical(self, x: Sequence) -> Vector:
        """Sum-zero representative for type A; identity for type D."""
        x = vec(x)
        if self.family == "A":
            mean = sum(x, Fraction(0)) / len(x)
            return tuple(a - mean for a in x)
        return x


def build_root_system(family: str, rank: int) -> RootSystem:
    """Root datum of ``A_rank`` (SU(rank+1)) or ``D_rank`` (Spin(2 rank))."""
    family = str(family).upper()
    try:
        rank = int(rank)
    except (TypeError, ValueError):
        raise ConfigurationError(f"rank must be an integer, got {rank!r}") from None
    if family == "A":
        if rank < 1:
            raise ConfigurationError("type A needs rank >= 1")
        n = rank + 1
        positive = []
        for i in range(n):
            for j in range(i + 1, n):
                v = [0] * n
                v[i], v[j] = 1, -1
                positive.append(tuple(v))
        simple = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(rank)]
    elif family == "D":
        if rank < 2:
            raise ConfigurationError("type D needs rank >= 2")
        n = rank
        positive = []
        for i in range(n):
            for j in range(i + 1, n):
                for sj in (-1, 1):
                    v = [0] * n
                    v[i], v[j] = 1, sj
                    positive.append(tuple(v))
        simple = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(rank - 1)]
        simple.append(tuple(1 if k >= n - 2 else 0 for k in range(n)))
    else:
        raise ConfigurationError(f"unsupported root system family {family!r} (use A or D)")
    positive = sorted(positive, reverse=True)
    roots = tuple(positive) + tuple(tuple(-a for a in r) for r in positive)
    index = {r: i for i, r in enumerate(roots)}
    return RootSystem(family, rank, n, roots, tuple(index[s] for s in simple), tuple(positive))


def _check_root(rs: RootSystem, alpha: Sequence) -> Root:
    if not rs.is_root(alpha):
        raise DomainError(f"{tuple(alpha)} is not a root of {rs.name}")
    return tuple(int(a) for a in alpha)


def coroot(rs: RootSystem, alpha: Sequence) -> Vector:
    """``h_alpha = 2 alpha / <alpha, alpha>``; equal to alpha in the simply-laced case."""
    alpha = _check_root(rs, alpha)
    return scale(Fraction(2) / dot(alpha, alpha), alpha)


def evaluate(alpha: Sequence, x: Sequence) -> Fraction:
    """alpha(x) via the ambient dot product."""
    return dot(alpha, x)


def reflect(rs: RootSystem, alpha: Sequence, x: Sequence) -> Vector:
    """``s_alpha(x) = x - alpha(x) h_alpha``."""
    h = coroot(rs, alpha)
    c = dot(alpha, x)
    return tuple(Fraction(a) - c * b for a, b in zip(x, h))


def reflection_matrix(rs: RootSystem, alpha: Sequence) -> WeylElement:
    alpha = _check_root(rs, alpha)
    h = coroot(rs, alpha)
    n = rs.ambient_dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = (1 if i == j else 0) - h[i] * alpha[j]
            row.append(int(entry))
        rows.append(tuple(row))
    return WeylElement(tuple(rows))


def weyl_group(rs: RootSystem, cap: int = WEYL_CAP) -> List[WeylElement]:
    """All elements of W, by breadth-first closure of the simple reflections.

    Elements come back sorted by their row-major matrix entries.
    """
    n = rs.ambient_dim
    gens = [sum(reflection_matrix(rs, a).matrix, ()) for a in rs.simple_roots]
    flat = kernels.weyl_closure(gens, n, cap)
    return [WeylElement(tuple(tuple(m[i * n:(i + 1) * n]) for i in range(n))) for m in flat]


def simple_coefficients(rs: RootSystem, x: Sequence) -> Vector:
    """Coordinates of x in the basis of simple roots (x must lie in their span)."""
    fw = rs.fundamental_weights
    coeffs = tuple(dot(x, w) for w in fw)
    recon = [Fraction(0)] * rs.ambient_dim
    for c, a in zip(coeffs, rs.simple_roots):
        for i, ai in enumerate(a):
            recon[i] += c * ai
    if tuple(recon) != vec(x):
        raise DomainError(f"{tuple(x)} is not in the span of the simple roots")
    return coeffs


def _highest_root(rs: RootSystem) -> Root:
    best = None
    best_coeffs = None
    for r in rs.positive_roots:
        c = simple_coefficients(rs, r)
        if best is None or all(a >= b for a, b in zip(c, best_coeffs)):
            best, best_coeffs = r, c
    for r in rs.positive_roots:
        c = simple_coefficients(rs, r)
        if not all(a >= b for a, b in zip(best_coeffs, c)):
            raise DomainError(f"{rs.name} has no dominating root; is it irreducible?")
    return best


def highest_root(rs: RootSystem) -> Root:
    return rs.highest_root


def _solve(matrix: List[List[Fraction]], rhs: List[List[Fraction]]) -> List[List[Fraction]]:
    # Gauss-Jordan on a square, invertible rational system
    n = len(matrix)
    aug = [list(map(Fraction, matrix[i])) + list(map(Fraction, rhs[i])) for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _fundamental_weights(rs: RootSystem) -> Tuple[Vector, ...]:
    # omega_i = sum_j (C^{-1})_{ij} alpha_j for a simply-laced Gram (= Cartan) matrix
    simple = rs.simple_roots
    gram = [[dot(a, b) for b in simple] for a in simple]
    l = len(simple)
    inv = _solve(gram, [[Fraction(int(i == j)) for j in range(l)] for i in range(l)])
    weights = []
    for i in range(l):
        w = [Fraction(0)] * rs.ambient_dim
        for j, a in enumerate(simple):
            for k, ak in enumerate(a):
                w[k] += inv[i][j] * ak
        weights.append(tuple(w))
    return tuple(weights)


def fundamental_weights(rs: RootSystem) -> Tuple[Vector, ...]:
    """Vectors omega_i with omega_i(h_{alpha_j}) = delta_ij (sum-zero for type A)."""
    return rs.fundamental_weights
