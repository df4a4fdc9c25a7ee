"""Pure-Python reference implementations of the hot kernels.

Both functions must return results identical (element for element, in the
same order) to the compiled versions in ``_core.pyx``.
"""

from __future__ import annotations

from collections import deque
from typing import List, Sequence, Tuple

from ..errors import DomainError, ResourceError


def weyl_closure(generators: Sequence[Sequence[int]], n: int, cap: int) -> List[Tuple[int, ...]]:
    """Close a set of n x n integer matrices (row-major, flat) under left multiplication.

    Returns the group as sorted flat tuples; the identity is always included.
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    identity = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    seen = {identity}
    queue = deque([identity])
    while queue:
        elt = queue.popleft()
        for g in gens:
            prod = []
            for i in range(n):
                row = g[i * n:(i + 1) * n]
                for j in range(n):
                    s = 0
                    for k in range(n):
                        gk = row[k]
                        if gk:
                            s += gk * elt[k * n + j]
                    prod.append(s)
            key = tuple(prod)
            if key not in seen:
                seen.add(key)
                if len(seen) > cap:
                    raise ResourceError(f"group closure exceeded cap of {cap} elements")
                queue.append(key)
    return sorted(seen)


def orbit_closure(
    lam0: Sequence[int],
    energy0: int,
    level: int,
    scale: int,
    translations: Sequence[Sequence[int]],
    reflections: Sequence[Sequence[int]],
    max_energy: int,
    mod_ones: bool,
) -> List[Tuple[Tuple[int, ...], int]]:
    """Breadth-first closure of a weight under coroot translations and root reflections.

    Weights are ``(lam, energy)`` with ``lam`` stored as integers scaled by
    ``scale``. Points with energy above ``max_energy`` are pruned. Translations
    must be the full (W-stable) coroot set for the pruned closure to be complete.
    """
    n = len(lam0)
    trans = [tuple(int(v) for v in t) for t in translations]
    refl = [tuple(int(v) for v in r) for r in reflections]
    tnorm = [sum(v * v for v in t) for t in trans]
    rnorm = [sum(v * v for v in r) for r in refl]
    for t2 in tnorm:
        if (level * t2) % 2:
            raise DomainError("energy shift h|xi|^2/2 is not integral")

    def canon(vec: List[int]) -> Tuple[int, ...]:
        if mod_ones:
            last = vec[-1]
            if last:
                return tuple(v - last for v in vec)
        return tuple(vec)

    start = (canon([int(v) for v in lam0]), int(energy0))
    if start[1] > max_energy:
        return []
    seen = {start}
    queue = deque([start])
    while queue:
        lam, energy = queue.popleft()
        for t, t2 in zip(trans, tnorm):
            pair = 0
            for i in range(n):
                pair += lam[i] * t[i]
            if pair % scale:
                raise DomainError("pairing lam(xi) is not integral")
            e = energy + pair // scale + (level * t2) // 2
            if e > max_energy:
                continue
            hs = level * scale
            key = (canon([lam[i] + hs * t[i] for i in range(n)]), e)
            if key not in seen:
                seen.add(key)
                queue.append(key)
        for r, r2 in zip(refl, rnorm):
            pair = 0
            for i in range(n):
                pair += lam[i] * r[i]
            if (2 * pair) % r2:
                raise DomainError("reflection leaves the weight lattice")
            c = (2 * pair) // r2
            if c == 0:
                continue
            key = (canon([lam[i] - c * r[i] for i in range(n)]), energy)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return sorted(seen, key=lambda item: (item[1], item[0]))
