"""Independent oracles: nothing here touches the Groebner engine."""

from fractions import Fraction
from itertools import product

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from quatnss import Poly, QPoly, Quaternion
from quatnss.poly import monomials_up_to


def _coords(row, monos) -> list:
    """Rational coordinates of an H_c row: (entry, unit, monomial)."""
    out = []
    for x in row:
        for comp in x.comp:
            out.extend(QQ(c.numerator, c.denominator) for c in (comp.terms.get(m, Fraction(0)) for m in monos))
    return out


def hc_member_dense(f, generators, degree: int) -> bool:
    """Membership of a homogeneous H_c row f of degree `degree` in the module of homogeneous generators.

    f is a member iff it lies in the Q-span of u * m * g over units u and
    monomials m with deg(m) + deg(g) = degree; decided by a rank comparison.
    """
    nvars = f[0].nvars
    monos = [m for m in monomials_up_to(nvars, degree) if sum(m) == degree]
    units = [QPoly.from_quaternion(Quaternion.unit(u), nvars) for u in range(4)]
    cols = []
    for g in generators:
        dg = max(x.degree() for x in g)
        if dg < 0 or dg > degree:
            continue
        for m in monomials_up_to(nvars, degree - dg):
            if sum(m) != degree - dg:
                continue
            mq = QPoly.from_poly(Poly.monomial(m))
            for u in units:
                cols.append(_coords(tuple(u * mq * x for x in g), monos))
    target = _coords(f, monos)
    if not cols:
        return all(c == 0 for c in target)
    a = DomainMatrix([list(c) for c in cols], (len(cols), len(target)), QQ)
    b = DomainMatrix([list(c) for c in cols] + [target], (len(cols) + 1, len(target)), QQ)
    return a.rank() == b.rank()


def small_polys(nvars: int, degree: int, coeffs=(-1, 0, 1)):
    """Every polynomial with coefficients in `coeffs` on the monomials of degree <= degree."""
    monos = monomials_up_to(nvars, degree)
    for cs in product(coeffs, repeat=len(monos)):
        yield Poly(nvars, {m: c for m, c in zip(monos, cs) if c})


def vanishes_on(f: Poly, points) -> bool:
    return all(f.evaluate(p) == 0 for p in points)


def sympy_expand_quat(w) -> tuple:
    """Components of (w - iwi - jwj - kwk)/4 etc computed with sympy's Quaternion class."""
    q = sympy.algebras.Quaternion(*(sympy.Rational(c.numerator, c.denominator) for c in w.components))
    return (q.a, q.b, q.c, q.d)
