"""Brute-force references that share no code with the library's algorithms.

Type A root data are rebuilt here from scratch (roots ``e_i - e_j``), Weyl
groups are plain permutations, and orbits come from applying every
``(w, xi)`` in a finite box directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import List, Set, Tuple

import numpy as np

WeightTuple = Tuple[int, Tuple[Fraction, ...], int]


def type_a_positive_roots(rank: int) -> List[Tuple[int, ...]]:
    n = rank + 1
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i], r[j] = 1, -1
            out.append(tuple(r))
    return out


def _pair(x, y) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def _canon(lam) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) - Fraction(lam[-1]) for v in lam)


def antidominant_scan(rank: int, level: int) -> Set[WeightTuple]:
    """Scan the box ``[-h-1, h+1]^rank x {0}`` for ``-h <= lam(h_alpha) <= 0``."""
    pos = type_a_positive_roots(rank)
    out = set()
    span = range(-level - 1, level + 2)
    for head in itertools.product(span, repeat=rank):
        lam = tuple(Fraction(v) for v in head) + (Fraction(0),)
        if all(-level <= _pair(lam, a) <= 0 for a in pos):
            out.add((level, lam, 0))
    return out


def orbit_bruteforce(rank: int, level: int, lam, energy: int, max_energy: int, box: int) -> Set[WeightTuple]:
    """Apply ``lam -> w(lam + h xi)``, ``n -> n + lam(xi) + h|xi|^2/2`` for all w in S_n, xi in a box."""
    n = rank + 1
    lam = tuple(Fraction(v) for v in lam)
    out = set()
    for head in itertools.product(range(-box, box + 1), repeat=rank):
        xi = head + (-sum(head),)
        e = energy + _pair(lam, xi) + Fraction(level * _pair(xi, xi), 2)
        if e > max_energy:
            continue
        moved = tuple(a + level * b for a, b in zip(lam, xi))
        for perm in itertools.permutations(range(n)):
            image = tuple(moved[perm[i]] for i in range(n))
            out.add((level, _canon(image), int(e)))
    return out


def reduce_a1_bruteforce(a: Fraction) -> Fraction:
    """Alpha-coordinate of the positive-alcove representative of ``alpha(x) = a``.

    The affine Weyl images of ``a`` are ``+-a + 2j``.
    """
    for sign in (1, -1):
        v = sign * a
        r = v - 2 * (v // 2)
        if 0 < r < 1:
            return r
    raise ValueError("point on a wall")


def count_inside_roots(poly_ascending: np.ndarray) -> int:
    """Number of roots of ``sum c_k z^k`` in the open unit disk."""
    c = np.trim_zeros(np.asarray(poly_ascending, dtype=complex), "b")
    if len(c) <= 1:
        return 0
    roots = np.roots(c[::-1])
    return int(np.sum(np.abs(roots) < 1))


def scalar_winding_by_roots(coeffs: dict) -> int:
    """Winding of a scalar Laurent polynomial: inside roots minus the pole order at 0."""
    lo = min(coeffs)
    hi = max(coeffs)
    poly = np.zeros(hi - lo + 1, dtype=complex)
    for k, v in coeffs.items():
        poly[k - lo] = v
    # z^lo * P(z): leading zeros of P at z=0 count as inside roots
    return count_inside_roots(poly) + lo


def windowed_hs_direct(coeffs: dict, n: int, M: int) -> Tuple[float, float]:
    """Squared entries of the off-diagonal blocks of ``f -> gamma f`` on ``-M <= k < M``."""
    b = c = 0.0
    for k in range(-M, M):
        for j, g in coeffs.items():
            r = k + j
            if not -M <= r < M:
                continue
            w = float(np.sum(np.abs(np.asarray(g, dtype=complex)) ** 2))
            if k < 0 <= r:
                b += w
            elif r < 0 <= k:
                c += w
    return b, c
