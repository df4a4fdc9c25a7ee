"""Finite-window diagnostics for loops acting on ``H = L^2(S^1, C^n) = H+ (+) H-``.

The window keeps basis vectors ``z^k e_i`` with ``-M <= k < M``, ordered by
``k`` then ``i``; ``H+`` is ``k >= 0``. Multiplication by a Laurent loop is
banded, so windowed blocks are exact away from the window edge.

The index of ``pr+ : gamma H+ -> H+`` is the index of the Toeplitz operator
``T(gamma) = pr+ gamma |H+``. Kernels are detected as near-null singular
vectors of tall sections (all columns ``0 <= k < M``, untruncated rows);
cokernels as kernels of ``T(gamma*)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, WindowError
from .loopalg import _ZERO, LaurentLoop, _float_array, gaussian_parts

SV_TOL = 1e-8
# singular values between SV_TOL and GRAY_BAND (relative) mean the window is too small
GRAY_BAND = 1e-5
# the smallest retained singular value may shrink by at most this fraction from M to M+2
DRIFT = 1e-2
INVERTIBILITY_POINTS = 16


@dataclass(frozen=True)
class PolarizedWindow:
    size: int
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise WindowError("window bound M must be >= 1")
        if self.size < 1:
            raise WindowError("vector size must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.bound * self.size

    def index(self, k: int, i: int) -> int:
        return (k + self.bound) * self.size + i

    @property
    def plus(self) -> slice:
        return slice(self.bound * self.size, self.dim)

    @property
    def minus(self) -> slice:
        return slice(0, self.bound * self.size)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks of the windowed multiplication operator: a: H+->H+, b: H-->H+, c: H+->H-, d: H-->H-."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    window: PolarizedWindow
    min_degree: int
    max_degree: int

    def assemble(self) -> np.ndarray:
        top = np.concatenate([self.d, self.c], axis=1)
        bottom = np.concatenate([self.b, self.a], axis=1)
        # rows/cols ordered H- then H+
        return np.concatenate([top, bottom], axis=0)


def multiplication_matrix(gamma: LaurentLoop, win: PolarizedWindow) -> np.ndarray:
    """Windowed matrix of ``f -> gamma f`` (rows falling outside the window are dropped)."""
    if gamma.size != win.size:
        raise DomainError("loop size does not match the window")
    n, M = win.size, win.bound
    if gamma.exact:
        full = np.empty((win.dim, win.dim), dtype=object)
        full.fill(_ZERO)
    else:
        full = np.zeros((win.dim, win.dim), dtype=complex)
    for k in range(-M, M):
        col = win.index(k, 0)
        for j, g in gamma.coeffs.items():
            r = k + j
            if -M <= r < M:
                row = win.index(r, 0)
                full[row:row + n, col:col + n] = g
    return full


def block_decompose(gamma: LaurentLoop, win: PolarizedWindow) -> BlockDecomposition:
    if win.bound <= gamma.support_radius:
        raise WindowError(f"window bound {win.bound} must exceed the loop's support radius {gamma.support_radius}")
    full = multiplication_matrix(gamma, win)
    P, N = win.plus, win.minus
    return BlockDecomposition(a=full[P, P], b=full[P, N], c=full[N, P], d=full[N, N], window=win,
                              min_degree=gamma.min_degree, max_degree=gamma.max_degree)


def _abs2(v):
    if isinstance(v, complex) or isinstance(v, (float, np.floating, np.complexfloating)):
        return abs(v) ** 2
    re, im = gaussian_parts(v)
    return re * re + im * im


def _frobenius_sq(m: np.ndarray):
    if m.dtype == object:
        return sum((_abs2(v) for v in m.flat), Fraction(0))
    return float(np.sum(np.abs(m) ** 2))


def hs_norm_offdiag(gamma: LaurentLoop, shifted: bool = False):
    """Squared Hilbert-Schmidt norms of the full b and c blocks.

    ``|b|^2 = sum_{k>=1} k |gamma_k|_F^2`` and ``|c|^2 = sum_{k<=-1} |k| |gamma_k|_F^2``.
    With ``shifted=True`` the weights are ``1 + |k|`` (the literal form of the
    summation quoted in the literature; kept for comparison only).
    """
    zero = Fraction(0) if gamma.exact else 0.0
    hb, hc = zero, zero
    for k, m in gamma.coeffs.items():
        w = abs(k) + (1 if shifted else 0)
        if k > 0:
            hb += w * _frobenius_sq(m)
        elif k < 0:
            hc += w * _frobenius_sq(m)
        elif shifted:
            hb += _frobenius_sq(m)
    return hb, hc


def hs_norm_windowed(bd: BlockDecomposition):
    """Sum of squared moduli of the windowed b and c entries."""
    return _frobenius_sq(bd.b), _frobenius_sq(bd.c)


def _tall_section(gamma: LaurentLoop, M: int) -> np.ndarray:
    # columns: degrees 0..M-1; rows: degrees 0..M-1+max(0, top degree)
    n = gamma.size
    top = max(0, gamma.max_degree)
    rows = (M + top) * n
    out = np.zeros((rows, M * n), dtype=complex)
    coeffs = {j: _float_array(g) for j, g in gamma.coeffs.items()}
    for k in range(M):
        for j, g in coeffs.items():
            r = k + j
            if r >= 0:
                out[r * n:(r + 1) * n, k * n:(k + 1) * n] = g
    return out


def _section_counts(gamma: LaurentLoop, M: int, tol: float) -> Tuple[int, int, float]:
    """(kernel count, gray-band count, smallest retained relative singular value) at bound M."""
    sec = _tall_section(gamma, M)
    sv = np.linalg.svd(sec, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return sec.shape[1], 0, 0.0
    rel = sv / sv[0]
    kept = rel[rel > tol]
    small = sec.shape[1] - kept.size
    gray = int(np.count_nonzero(kept <= max(GRAY_BAND, tol)))
    return small, gray, float(kept[-1]) if kept.size else 0.0


def toeplitz_kernel_dim(gamma: LaurentLoop, M: int, tol: float = SV_TOL) -> int:
    """Count of singular values of the tall section below ``tol * largest``."""
    return _section_counts(gamma, M, tol)[0]


def min_singular_value(gamma: LaurentLoop, points: int = INVERTIBILITY_POINTS) -> float:
    zs = np.exp(2j * np.pi * np.arange(points) / points)
    vals = gamma.evaluate_many(zs)
    return float(min(np.linalg.svd(v, compute_uv=False)[-1] for v in vals))


def _check_invertible(gamma: LaurentLoop, tol: float) -> None:
    smin = min_singular_value(gamma, 64)
    if smin <= tol:
        raise DomainError(f"loop is not pointwise invertible (min singular value {smin:.3e})")


def index_report(gamma: LaurentLoop, win: PolarizedWindow, tol: float = SV_TOL,
                 threads: int = 1) -> Dict[str, object]:
    """Kernel and cokernel counts of T(gamma) at window bounds M and M+2."""
    if gamma.size != win.size:
        raise DomainError("loop size does not match the window")
    _check_invertible(gamma, tol)
    adj = gamma.adjoint()
    jobs = [(gamma, win.bound), (adj, win.bound), (gamma, win.bound + 2), (adj, win.bound + 2)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(lambda job: _section_counts(job[0], job[1], tol), jobs))
    else:
        counts = [_section_counts(g, m, tol) for g, m in jobs]
    (ker, _, lo), (coker, _, lo_adj), (ker2, gray, lo2), (coker2, gray_adj, lo2_adj) = counts
    drifting = lo2 < (1 - DRIFT) * lo or lo2_adj < (1 - DRIFT) * lo_adj
    return {
        "kernel": ker,
        "cokernel": coker,
        "index": ker - coker,
        "kernel_next": ker2,
        "cokernel_next": coker2,
        "gray": gray + gray_adj,
        "drifting": bool(drifting),
        "stabilized": (ker, coker) == (ker2, coker2) and gray + gray_adj == 0 and not drifting,
        "window": win.bound,
        "threshold": tol,
    }


def virtual_dimension(gamma: LaurentLoop, win: PolarizedWindow, tol: float = SV_TOL,
                      threads: int = 1) -> int:
    """Fredholm index of ``pr+ : gamma H+ -> H+`` (``dim ker - dim coker``)."""
    if win.bound < gamma.support_radius * gamma.size + 2:
        raise WindowError(f"window bound {win.bound} is below support*size + 2 = "
                          f"{gamma.support_radius * gamma.size + 2}")
    rep = index_report(gamma, win, tol, threads)
    if not rep["stabilized"]:
        raise WindowError(f"window M={win.bound} not stabilized: kernel/cokernel ({rep['kernel']}, {rep['cokernel']}) "
                          f"at M, ({rep['kernel_next']}, {rep['cokernel_next']}) at M+2, "
                          f"{rep['gray']} singular values in the gray band, drifting={rep['drifting']}")
    return int(rep["index"])


def intersection_dimensions(gamma: LaurentLoop, win: PolarizedWindow, ms: Sequence[int],
                            tol: float = SV_TOL) -> Dict[int, int]:
    """Windowed ``dim (gamma H+) cap z^m H-`` for each m, i.e. ``dim ker T(z^-m gamma)``."""
    _check_invertible(gamma, tol)
    n = gamma.size
    out = {}
    for m in ms:
        shift = LaurentLoop({-m: np.eye(n, dtype=int)}, n, exact=gamma.exact)
        out[int(m)] = toeplitz_kernel_dim(shift * gamma, win.bound, tol)
    return out


def winding_number(gamma: LaurentLoop, points: int = 4096) -> int:
    """Winding number of ``det gamma`` around 0, by tracking the argument on the circle."""
    zs = np.exp(2j * np.pi * np.arange(points + 1) / points)
    dets = np.linalg.det(gamma.evaluate_many(zs))
    if np.min(np.abs(dets)) == 0:
        raise DomainError("det gamma vanishes on the circle")
    phase = np.unwrap(np.angle(dets))
    return int(round((phase[-1] - phase[0]) / (2 * np.pi)))


def gl_res_certificate(gamma: LaurentLoop, tail_bound: float = SV_TOL,
                       window: Optional[PolarizedWindow] = None, threads: int = 1) -> Dict[str, object]:
    """Finite certificate that a Laurent loop acts in ``Gl_res(H)``.

    The off-diagonal Hilbert-Schmidt norms are finite sums; invertibility is
    checked at 16 circle points against ``tail_bound``. When a window is
    given, the index is computed too and its stabilization recorded.
    """
    hb, hc = hs_norm_offdiag(gamma)
    hb1, hc1 = hs_norm_offdiag(gamma, shifted=True)
    smin = min_singular_value(gamma)
    invertible = smin > tail_bound
    report: Dict[str, object] = {
        "hs_b": hb,
        "hs_c": hc,
        "hs_b_shifted": hb1,
        "hs_c_shifted": hc1,
        "invertible": bool(invertible),
        "min_singular_value": smin,
        "window": window.bound if window is not None else None,
        "stabilized": None,
        "virtual_dimension": None,
        "pass": bool(invertible),
    }
    if window is not None and invertible:
        rep = index_report(gamma, window, threads=threads)
        report["stabilized"] = bool(rep["stabilized"])
        report["kernel"] = rep["kernel"]
        report["cokernel"] = rep["cokernel"]
        if rep["stabilized"]:
            report["virtual_dimension"] = int(rep["index"])
    return report
