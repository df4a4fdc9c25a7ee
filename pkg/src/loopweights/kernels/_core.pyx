# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled versions of the closure kernels. Semantics mirror ``_fallback``."""

from collections import deque

from libc.stdlib cimport malloc, free

from ..errors import DomainError, ResourceError


def weyl_closure(generators, Py_ssize_t n, Py_ssize_t cap):
    cdef Py_ssize_t ngen = len(generators)
    cdef Py_ssize_t nn = n * n
    cdef long long *gens = <long long *> malloc(ngen * nn * sizeof(long long))
    cdef long long *elt = <long long *> malloc(nn * sizeof(long long))
    cdef long long *prod = <long long *> malloc(nn * sizeof(long long))
    cdef Py_ssize_t g, i, j, k
    cdef long long s, gk
    if gens == NULL or elt == NULL or prod == NULL:
        free(gens); free(elt); free(prod)
        raise MemoryError()
    try:
        for g in range(ngen):
            row = generators[g]
            for i in range(nn):
                gens[g * nn + i] = row[i]
        identity = tuple([1 if i == j else 0 for i in range(n) for j in range(n)])
        seen = {identity}
        queue = deque([identity])
        while queue:
            cur = queue.popleft()
            for i in range(nn):
                elt[i] = cur[i]
            for g in range(ngen):
                for i in range(n):
                    for j in range(n):
                        s = 0
                        for k in range(n):
                            gk = gens[g * nn + i * n + k]
                            if gk != 0:
                                s += gk * elt[k * n + j]
                        prod[i * n + j] = s
                key = tuple([prod[i] for i in range(nn)])
                if key not in seen:
                    seen.add(key)
                    if len(seen) > cap:
                        raise ResourceError(f"group closure exceeded cap of {cap} elements")
                    queue.append(key)
        return sorted(seen)
    finally:
        free(gens); free(elt); free(prod)


def orbit_closure(lam0, long long energy0, long long level, long long scale,
                  translations, reflections, long long max_energy, bint mod_ones):
    cdef Py_ssize_t n = len(lam0)
    cdef Py_ssize_t nt = len(translations)
    cdef Py_ssize_t nr = len(reflections)
    cdef long long *trans = <long long *> malloc((nt * n + 1) * sizeof(long long))
    cdef long long *refl = <long long *> malloc((nr * n + 1) * sizeof(long long))
    cdef long long *tnorm = <long long *> malloc((nt + 1) * sizeof(long long))
    cdef long long *rnorm = <long long *> malloc((nr + 1) * sizeof(long long))
    cdef long long *lam = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long *out = <long long *> malloc((n + 1) * sizeof(long long))
    cdef Py_ssize_t a, i
    cdef long long pair, e, c, energy, last, hs, s
    if not (trans and refl and tnorm and rnorm and lam and out):
        free(trans); free(refl); free(tnorm); free(rnorm); free(lam); free(out)
        raise MemoryError()
    try:
        for a in range(nt):
            s = 0
            for i in range(n):
                trans[a * n + i] = translations[a][i]
                s += trans[a * n + i] * trans[a * n + i]
            tnorm[a] = s
            if (level * s) % 2:
                raise DomainError("energy shift h|xi|^2/2 is not integral")
        for a in range(nr):
            s = 0
            for i in range(n):
                refl[a * n + i] = reflections[a][i]
                s += refl[a * n + i] * refl[a * n + i]
            rnorm[a] = s
        hs = level * scale

        for i in range(n):
            lam[i] = lam0[i]
        if mod_ones:
            last = lam[n - 1]
            for i in range(n):
                lam[i] -= last
        start = (tuple([lam[i] for i in range(n)]), energy0)
        if energy0 > max_energy:
            return []
        seen = {start}
        queue = deque([start])
        while queue:
            cur, energy = queue.popleft()
            for i in range(n):
                lam[i] = cur[i]
            for a in range(nt):
                pair = 0
                for i in range(n):
                    pair += lam[i] * trans[a * n + i]
                if pair % scale != 0:
                    raise DomainError("pairing lam(xi) is not integral")
                e = energy + pair // scale + (level * tnorm[a]) // 2
                if e > max_energy:
                    continue
                for i in range(n):
                    out[i] = lam[i] + hs * trans[a * n + i]
                if mod_ones:
                    last = out[n - 1]
                    for i in range(n):
                        out[i] -= last
                key = (tuple([out[i] for i in range(n)]), e)
                if key not in seen:
                    seen.add(key)
                    queue.append(key)
            for a in range(nr):
                pair = 0
                for i in range(n):
                    pair += lam[i] * refl[a * n + i]
                if (2 * pair) % rnorm[a] != 0:
                    raise DomainError("reflection leaves the weight lattice")
                c = (2 * pair) // rnorm[a]
                if c == 0:
                    continue
                for i in range(n):
                    out[i] = lam[i] - c * refl[a * n + i]
                if mod_ones:
                    last = out[n - 1]
                    for i in range(n):
                        out[i] -= last
                key = (tuple([out[i] for i in range(n)]), energy)
                if key not in seen:
                    seen.add(key)
                    queue.append(key)
        return sorted(seen, key=lambda item: (item[1], item[0]))
    finally:
        free(trans); free(refl); free(tnorm); free(rnorm); free(lam); free(out)
