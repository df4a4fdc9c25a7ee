"""Laurent-polynomial loops with matrix coefficients and the loop-algebra cocycle.

A :class:`LaurentLoop` is a finitely supported map ``k -> A_k`` of n x n
matrices, read as ``gamma(z) = sum_k A_k z^k`` on the unit circle. Two
backends share one class: exact Gaussian-rational entries (sympy ``QQ_I``
elements in numpy object arrays) and ``complex128``. Mixing them yields a
float loop.

Derivatives are taken in theta with ``z = exp(i theta)``, so the derivative
of ``B_k z^k`` is ``i k B_k z^k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .cartan import RootSystem, coroot
from .errors import DomainError

GaussianRational = type(QQ_I(0, 0))
_ZERO = QQ_I(0, 0)
_ONE = QQ_I(1, 0)
_I = QQ_I(0, 1)


def gaussian(re, im=0) -> GaussianRational:
    return QQ_I(Fraction(re), Fraction(im))


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def gaussian_parts(x) -> Tuple[Fraction, Fraction]:
    return _to_fraction(x.x), _to_fraction(x.y)


def _exact_entry(v):
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (bool, np.bool_)):
        raise TypeError("boolean entry")
    if isinstance(v, (int, np.integer, Rational)):
        return QQ_I(Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v), 0)
    if hasattr(v, "numerator") and hasattr(v, "denominator"):  # gmpy mpq
        return QQ_I(_to_fraction(v), 0)
    raise TypeError(f"{type(v).__name__} entry is not exact")


def _exact_array(m) -> np.ndarray:
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2:
        raise DomainError("coefficient must be a square matrix")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = _exact_entry(v)
    return out


def _float_array(m) -> np.ndarray:
    arr = np.asarray(m)
    if arr.dtype == object:
        arr = np.vectorize(_to_complex, otypes=[complex])(arr)
    return np.asarray(arr, dtype=complex)


def _to_complex(v) -> complex:
    if isinstance(v, GaussianRational):
        return complex(float(v.x), float(v.y))
    return complex(v)


def _is_zero(m: np.ndarray) -> bool:
    if m.dtype == object:
        return not any(bool(v) for v in m.flat)
    return not np.any(m)


def conj_transpose(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        out = np.empty((m.shape[1], m.shape[0]), dtype=object)
        for (i, j), v in np.ndenumerate(m):
            out[j, i] = QQ_I(v.x, -v.y)
        return out
    return m.conj().T


def trace(m: np.ndarray):
    if m.dtype == object:
        s = _ZERO
        for i in range(m.shape[0]):
            s = s + m[i, i]
        return s
    return complex(np.trace(m))


def _zero_matrix(n: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((n, n), dtype=object)
        out.fill(_ZERO)
        return out
    return np.zeros((n, n), dtype=complex)


def exact_identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = _ONE if i == j else _ZERO
    return out


def exact_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    dm = DomainMatrix([[m[i, j] for j in range(n)] for i in range(n)], (n, n), QQ_I)
    if dm.rank() < n:
        raise DomainError("matrix is singular")
    inv = dm.inv().to_Matrix()
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = QQ_I.from_sympy(inv[i, j])
    return out


def exact_rank(m: np.ndarray) -> int:
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0
    dm = DomainMatrix([[m[i, j] for j in range(cols)] for i in range(rows)], (rows, cols), QQ_I)
    return int(dm.rank())


class LaurentLoop:
    """Finitely supported Fourier series with square matrix coefficients."""

    __slots__ = ("size", "coeffs", "exact")

    def __init__(self, coeffs: Mapping[int, object], size: Optional[int] = None,
                 exact: Optional[bool] = None):
        items = {int(k): v for k, v in coeffs.items()}
        if exact is None:
            exact = True
            for v in items.values():
                try:
                    _exact_array(v)
                except TypeError:
                    exact = False
                    break
        conv = _exact_array if exact else _float_array
        clean: Dict[int, np.ndarray] = {}
        for k in sorted(items):
            m = conv(items[k])
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise DomainError("coefficients must be square matrices")
            if size is None:
                size = m.shape[0]
            if m.shape[0] != size:
                raise DomainError("coefficients have inconsistent sizes")
            if not _is_zero(m):
                clean[k] = m
        if size is None:
            raise DomainError("cannot infer the size of an empty loop")
        self.size = int(size)
        self.coeffs = clean
        self.exact = bool(exact)

    # constructors
    @classmethod
    def constant(cls, m, exact: Optional[bool] = None) -> "LaurentLoop":
        m = np.asarray(m, dtype=object) if exact is not False else np.asarray(m)
        return cls({0: m}, size=len(m), exact=exact)

    @classmethod
    def monomial(cls, k: int, m, exact: Optional[bool] = None) -> "LaurentLoop":
        return cls({k: m}, size=len(m), exact=exact)

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "LaurentLoop":
        return cls({0: np.eye(n, dtype=int).tolist()}, size=n, exact=exact)

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "LaurentLoop":
        return cls({}, size=n, exact=exact)

    # structure
    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(self.coeffs)

    @property
    def min_degree(self) -> int:
        return min(self.coeffs, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.coeffs, default=0)

    @property
    def support_radius(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    def coefficient(self, k: int) -> np.ndarray:
        if k in self.coeffs:
            return self.coeffs[k]
        return _zero_matrix(self.size, self.exact)

    def to_float(self) -> "LaurentLoop":
        if not self.exact:
            return self
        return LaurentLoop({k: _float_array(m) for k, m in self.coeffs.items()}, self.size, exact=False)

    def evaluate(self, z: complex) -> np.ndarray:
        out = np.zeros((self.size, self.size), dtype=complex)
        for k, m in self.coeffs.items():
            out += _float_array(m) * (complex(z) ** k)
        return out

    def evaluate_many(self, zs: Iterable[complex]) -> np.ndarray:
        zs = np.asarray(list(zs), dtype=complex)
        out = np.zeros((len(zs), self.size, self.size), dtype=complex)
        for k, m in self.coeffs.items():
            out += (zs ** k)[:, None, None] * _float_array(m)[None]
        return out

    def value_at_one(self) -> np.ndarray:
        """gamma(1) = sum_k A_k, exact when the loop is."""
        total = _zero_matrix(self.size, self.exact)
        for m in self.coeffs.values():
            total = total + m
        return total

    def adjoint(self) -> "LaurentLoop":
        """gamma*(z) = gamma(z)^H on the circle: coefficient k becomes (A_{-k})^H."""
        return LaurentLoop({-k: conj_transpose(m) for k, m in self.coeffs.items()}, self.size, self.exact)

    # arithmetic
    def _coerce(self, other: "LaurentLoop") -> Tuple["LaurentLoop", "LaurentLoop", bool]:
        if not isinstance(other, LaurentLoop):
            raise TypeError("expected a LaurentLoop")
        if other.size != self.size:
            raise DomainError(f"size mismatch: {self.size} vs {other.size}")
        exact = self.exact and other.exact
        a = self if exact else self.to_float()
        b = other if exact else other.to_float()
        return a, b, exact

    def __add__(self, other: "LaurentLoop") -> "LaurentLoop":
        a, b, exact = self._coerce(other)
        out = dict(a.coeffs)
        for k, m in b.coeffs.items():
            out[k] = out[k] + m if k in out else m
        return LaurentLoop(out, self.size, exact)

    def __neg__(self) -> "LaurentLoop":
        return LaurentLoop({k: -m for k, m in self.coeffs.items()}, self.size, self.exact)

    def __sub__(self, other: "LaurentLoop") -> "LaurentLoop":
        return self + (-other)

    def __mul__(self, other: "LaurentLoop") -> "LaurentLoop":
        return multiply(self, other)

    def scaled(self, c) -> "LaurentLoop":
        if self.exact:
            try:
                c = _exact_entry(c)
            except TypeError:
                return self.to_float().scaled(c)
        return LaurentLoop({k: m * c for k, m in self.coeffs.items()}, self.size, self.exact)

    def left_multiply(self, g: np.ndarray) -> "LaurentLoop":
        return LaurentLoop({k: g @ m for k, m in self.coeffs.items()}, self.size, self.exact)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentLoop) or other.size != self.size:
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        for k, m in self.coeffs.items():
            o = other.coeffs[k]
            if self.exact and other.exact:
                if any(bool(x - y) for x, y in zip(m.flat, o.flat)):
                    return False
            elif not np.array_equal(_float_array(m), _float_array(o)):
                return False
        return True

    __hash__ = None

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"LaurentLoop(size={self.size}, degrees={list(self.coeffs)}, {kind})"


def multiply(f: LaurentLoop, g: LaurentLoop) -> LaurentLoop:
    """Pointwise product: Cauchy product of the coefficient sequences."""
    a, b, exact = f._coerce(g)
    out: Dict[int, np.ndarray] = {}
    for i, m in a.coeffs.items():
        for j, n in b.coeffs.items():
            p = m @ n
            out[i + j] = out[i + j] + p if (i + j) in out else p
    return LaurentLoop(out, f.size, exact)


def bracket_pointwise(x: LaurentLoop, y: LaurentLoop) -> LaurentLoop:
    """[X, Y](z) = X(z)Y(z) - Y(z)X(z)."""
    return multiply(x, y) - multiply(y, x)


def invariant_form(a: np.ndarray, b: np.ndarray):
    """Bilinear extension ``-tr(AB)`` of the basic inner product; equals tr(A^H B) on u(n)."""
    return -trace(a @ b)


def basic_inner_product(a, b):
    """``tr(A^H B)``, normalized so that ``<h_alpha, h_alpha> = 2``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DomainError("size mismatch")
    if a.dtype == object or b.dtype == object:
        try:
            a, b = _exact_array(a), _exact_array(b)
        except TypeError:
            a, b = _float_array(a), _float_array(b)
    return trace(conj_transpose(a) @ b)


def cocycle(x: LaurentLoop, y: LaurentLoop, ip: Optional[Callable] = None):
    """``omega(X, Y) = (1/2pi) int <X, Y'> dtheta = sum_k i k <A_{-k}, B_k>``."""
    a, b, exact = x._coerce(y)
    ip = ip or invariant_form
    total = _ZERO if exact else 0j
    for k, bk in b.coeffs.items():
        if k == 0 or -k not in a.coeffs:
            continue
        val = ip(a.coeffs[-k], bk)
        if exact:
            total = total + QQ_I(0, k) * val
        else:
            total += 1j * k * complex(val)
    return total


def _derivative_samples(y: LaurentLoop, points: int) -> np.ndarray:
    # spectral differentiation of the sampled loop
    theta = 2 * np.pi * np.arange(points) / points
    vals = y.evaluate_many(np.exp(1j * theta))
    spec = np.fft.fft(vals, axis=0)
    freqs = np.fft.fftfreq(points, d=1.0 / points)
    return np.fft.ifft(1j * freqs[:, None, None] * spec, axis=0)


def cocycle_quadrature(x: LaurentLoop, y: LaurentLoop, points: int = 1024) -> complex:
    """Trapezoid-rule value of the cocycle integral (independent cross-check)."""
    if x.size != y.size:
        raise DomainError("size mismatch")
    bound = max(x.support_radius, y.support_radius)
    if points <= 2 * bound:
        raise DomainError("too few quadrature points for the loop degrees")
    theta = 2 * np.pi * np.arange(points) / points
    xs = x.evaluate_many(np.exp(1j * theta))
    dys = _derivative_samples(y, points)
    vals = -np.einsum("jab,jba->j", xs, dys)
    return complex(vals.mean())


@dataclass(frozen=True)
class ExtendedElement:
    """Element ``(a, X)`` of ``R + Lg`` with the centrally extended bracket."""

    central: object
    loop: LaurentLoop


def extended_bracket(e1: ExtendedElement, e2: ExtendedElement,
                     ip: Optional[Callable] = None) -> ExtendedElement:
    """``[(a, X), (b, Y)] = (omega(X, Y), [X, Y])``."""
    return ExtendedElement(cocycle(e1.loop, e2.loop, ip), bracket_pointwise(e1.loop, e2.loop))


def is_real_form(x: LaurentLoop, tol: float = 1e-12) -> bool:
    """True when X takes values in u(n): ``A_{-k} = -A_k^H``."""
    adj = x.adjoint()
    diff = x + adj
    if diff.exact:
        return not diff.coeffs
    return all(np.max(np.abs(m)) <= tol for m in diff.coeffs.values())


def coroot_matrix(rs: RootSystem, alpha) -> np.ndarray:
    """``h_alpha`` as the diagonal matrix ``i diag(alpha)`` in u(n); type A only."""
    if rs.family != "A":
        raise DomainError("matrix coroots are implemented for type A")
    h = coroot(rs, alpha)
    n = rs.ambient_dim
    out = _zero_matrix(n, exact=True)
    for i in range(n):
        out[i, i] = QQ_I(0, h[i])
    return out


def integrality_check(rs: RootSystem, ip_scale=1) -> bool:
    """True iff the scaled basic inner product gives ``<h_alpha, h_alpha>`` in 2Z."""
    ip_scale = Fraction(ip_scale)
    for alpha in rs.roots:
        if rs.family == "A":
            h = coroot_matrix(rs, alpha)
            re, im = gaussian_parts(basic_inner_product(h, h))
            if im:
                return False
            value = ip_scale * re
        else:
            h = coroot(rs, alpha)
            value = ip_scale * sum((v * v for v in h), Fraction(0))
        if value.denominator != 1 or value.numerator % 2:
            return False
    return True


def su2_generator(n: int, kind: str = "X") -> LaurentLoop:
    """``X_n(z) = [[0, z^n], [-z^-n, 0]]`` or ``Y_n(z) = [[0, i z^n], [i z^-n, 0]]``."""
    if kind == "X":
        up, low = 1, -1
    elif kind == "Y":
        up, low = _I, _I
    else:
        raise DomainError("kind must be 'X' or 'Y'")
    upper = [[0, up], [0, 0]]
    lower = [[0, 0], [low, 0]]
    return LaurentLoop({n: upper}, 2, exact=True) + LaurentLoop({-n: lower}, 2, exact=True)


def su2_generator_exp(n: int, t: float, kind: str = "X") -> LaurentLoop:
    """``exp(t X_n) = cos(t) I + sin(t) X_n``, a polynomial loop since ``X_n^2 = -1``."""
    gen = su2_generator(n, kind).to_float()
    return LaurentLoop.identity(2, exact=False).scaled(math.cos(t)) + gen.scaled(math.sin(t))


def split_loop(f: LaurentLoop, cond_limit: float = 1e12) -> Tuple[np.ndarray, LaurentLoop]:
    """``f -> (f(1), f(1)^{-1} f)``: a constant times a based loop."""
    g = f.value_at_one()
    if f.exact:
        ginv = exact_inverse(g)
    else:
        g = _float_array(g)
        if not np.all(np.isfinite(g)) or np.linalg.cond(g) > cond_limit:
            raise DomainError("f(1) is singular or ill-conditioned")
        ginv = np.linalg.inv(g)
    return g, f.left_multiply(ginv)


def trotter_error(x: np.ndarray, y: np.ndarray, k: int) -> float:
    """Operator-norm gap between ``exp(X+Y)`` and ``(exp(X/k) exp(Y/k))^k`` at fixed k."""
    from scipy.linalg import expm

    x = _float_array(x)
    y = _float_array(y)
    step = expm(x / k) @ expm(y / k)
    return float(np.linalg.norm(expm(x + y) - np.linalg.matrix_power(step, k), 2))
