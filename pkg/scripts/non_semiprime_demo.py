"""The module N generated by x(x, y) and y(x, y) in Q[x, y]^2.

N is not semiprime and not real, yet its colon ideal (N : R^2) is zero, which
is a real ideal.  The bounded closure finds (x, y) only when its candidate
pool is seeded from the vanishing module of a fixture zero set.
"""

from quatnss import Poly, Submodule, ZeroSet, real_closure_bounded, vanishing_module
from quatnss.submod import colon_module, realness_witness_check, semiprime_witness_check


def main():
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    n = Submodule("Q", 2, 2, ((x * x, x * y), (x * y, y * y)))
    print("generators:     (x^2, x*y), (x*y, y^2)")
    print("(x, y) in N:   ", n.member((x, y)))
    print("(N : R^2) zero:", colon_module(n).is_zero())
    print("semiprime test:", semiprime_witness_check((x, y), n))
    print("realness test: ", realness_witness_check([(x, y)], n).verdict)

    pairs = [((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 0), (0, 1)), ((0, 1), (1, 0)),
             ((1, 1), (1, -1)), ((1, -1), (1, 1)), ((2, 1), (1, -2)), ((1, 2), (2, -1))]
    s = ZeroSet("Q", 2, 2, pairs, list(n.generators))
    vm = vanishing_module(s)
    target = Submodule("Q", 2, 2, ((x, y),))
    for label, zs in (("monomial pool only", None), ("pool guided by J(S)", s)):
        cl = real_closure_bounded(list(n.generators), "Q", 2, 2, degree_bound=2, zero_set=zs)
        cert = cl.certificate.format(["x", "y"]) or "(no step admitted)"
        print(f"closure, {label}:")
        print("  " + cert.replace("\n", "\n  "))
        print("  equals <(x, y)>:", cl.module.same_as(target))
        print("  inside J(S):    ", vm.contains(cl.module))

if __name__ == "__main__":
    main()
