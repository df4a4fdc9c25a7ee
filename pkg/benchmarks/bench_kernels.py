"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import timeit

from loopweights import cartan, weights
from loopweights.kernels import _fallback

try:
    from loopweights.kernels import _core
except ImportError:  # extension not built
    _core = None


def weyl_case(family, rank):
    rs = cartan.build_root_system(family, rank)
    gens = [sum(cartan.reflection_matrix(rs, a).matrix, ()) for a in rs.simple_roots]
    return f"weyl_closure {rs.name}", "weyl_closure", (gens, rs.ambient_dim, 10 ** 6)


def orbit_case(rank, level, max_energy):
    rs = cartan.build_root_system("A", rank)
    w = weights.enumerate_antidominant(rs, level)[-1]
    lam = weights.canonical_lam(rs, w.lam)
    scale = math.lcm(*(v.denominator for v in lam))
    args = ([int(v * scale) for v in lam], w.energy, w.level, scale,
            [tuple(int(v) for v in cartan.coroot(rs, a)) for a in rs.roots],
            list(rs.simple_roots), max_energy, True)
    return f"orbit_closure A{rank} h={level} n<={max_energy}", "orbit_closure", args


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()
    cases = [weyl_case("A", 4), weyl_case("A", 5), weyl_case("D", 5),
             orbit_case(2, 2, 30), orbit_case(3, 1, 12)]
    print(f"{'case':36s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, name, args in cases:
        py = min(timeit.repeat(lambda: getattr(_fallback, name)(*args), number=1, repeat=opts.repeat))
        if _core is None:
            print(f"{label:36s} {py:10.4f} {'n/a':>10s} {'':>8s}")
            continue
        assert getattr(_core, name)(*args) == getattr(_fallback, name)(*args)
        cy = min(timeit.repeat(lambda: getattr(_core, name)(*args), number=1, repeat=opts.repeat))
        print(f"{label:36s} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
