"""How far the bounded closure gets on random shifted sums of squares.

For p = sum_i (x_i - a_i)^2 times a random positive factor, the real radical
of (p) is the maximal ideal at a.  For each bound we report how often the
closure equals the vanishing module J({a}), once with the default monomial
pool and once with the pool seeded by J({a}), plus the mean time.

    python scripts/closure_vs_bound.py --trials 20 --bounds 1 2 3
"""

import argparse
import random
import time
from fractions import Fraction

from quatnss import Poly, ZeroSet, real_closure_bounded, vanishing_module


def instance(rng: random.Random, d: int):
    a = tuple(rng.randint(-2, 2) for _ in range(d))
    xs = [Poly.var(i, d) for i in range(d)]
    p = sum(((x - c) ** 2 for x, c in zip(xs, a)), Poly.zero(d))
    bump = 1 + sum((x * x for x in xs), Poly.zero(d)) * Fraction(rng.randint(0, 2))
    return a, p * bump


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--nvars", type=int, default=2)
    ap.add_argument("--bounds", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--max-tuple", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    cases = [instance(rng, args.nvars) for _ in range(args.trials)]
    print("bound  unguided  guided   mean_seconds")
    for b in args.bounds:
        hits = {False: 0, True: 0}
        spent = 0.0
        for a, p in cases:
            zs = ZeroSet("Q", args.nvars, 1, [(a, (1,))])
            vm = vanishing_module(zs)
            for guided in (False, True):
                t0 = time.perf_counter()
                cl = real_closure_bounded([(p,)], "Q", 1, args.nvars, degree_bound=b,
                                          max_tuple=args.max_tuple, zero_set=zs if guided else None)
                spent += time.perf_counter() - t0
                hits[guided] += cl.module.same_as(vm)
        n = len(cases)
        print(f"{b:5d}  {hits[False]:3d}/{n:<4d}  {hits[True]:3d}/{n:<4d} {spent / (2 * n):.4f}")

if __name__ == "__main__":
    main()
