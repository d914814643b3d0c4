from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, qpolys, rationals
from quatnss import Poly, QPoly, Quaternion
from quatnss.poly import VariableCountError, decompose, monomials_up_to, recompose
from quatnss.quat import I, J, K

X = Poly.var(0, 2)
Y = Poly.var(1, 2)
QX, QY = QPoly.from_poly(X), QPoly.from_poly(Y)
QI, QJ, QK = (QPoly.from_quaternion(u, 2) for u in (I, J, K))


def to_sympy(f: QPoly):
    x, y = sympy.symbols("x y")
    comps = [sum((sympy.Rational(c.numerator, c.denominator) * x ** e[0] * y ** e[1]
                  for e, c in p.terms.items()), sympy.Integer(0)) for p in f.comp]
    return sympy.algebras.Quaternion(*comps)


def test_involution_fixes_variables():
    f = QX + QI * QY
    assert f.star() == QX - QI * QY


def test_central_variables_product():
    assert (QI * QX) * (QJ * QX) == QK * QX * QX
    # sympy oracle: quaternions with commuting symbolic entries
    x = sympy.Symbol("x")
    prod = sympy.algebras.Quaternion(0, x, 0, 0) * sympy.algebras.Quaternion(0, 0, x, 0)
    assert (prod.a, prod.b, prod.c, prod.d) == (0, 0, 0, x ** 2)


@given(qpolys(2), qpolys(2))
def test_product_matches_sympy(f, g):
    ours = to_sympy(f * g)
    ref = to_sympy(f) * to_sympy(g)
    for u, v in zip((ours.a, ours.b, ours.c, ours.d), (ref.a, ref.b, ref.c, ref.d)):
        assert sympy.expand(u - v) == 0


def test_unit_multiplication_identity():
    f = QX * QX + QI
    assert f * 1 == f


def test_variable_count_mismatch():
    with pytest.raises(VariableCountError):
        _ = Poly.var(0, 1) + Poly.var(0, 2)


@pytest.mark.parametrize("route", ["direct", "two-sided"])
def test_decompose_examples(route):
    x = QPoly.from_poly(Poly.var(0, 1))
    one = Poly.constant(1, 1)
    xp = Poly.var(0, 1)
    zero = Poly.zero(1)
    assert decompose((1 + QPoly.from_quaternion(I, 1)) * x, route) == (xp, xp, zero, zero)
    f = QPoly.from_quaternion(K, 1) * x * x + QPoly.from_quaternion(J, 1)
    assert decompose(f, route) == (zero, zero, one, xp * xp)
    assert decompose(QPoly.zero(1), route) == (zero,) * 4


@given(qpolys(2))
def test_decompose_routes_agree(f):
    parts = decompose(f, "two-sided")
    assert parts == decompose(f)
    assert recompose(parts) == f


def test_evaluate_examples():
    assert (X * X + Y * Y).evaluate((3, 4)) == 25
    x = QPoly.from_poly(Poly.var(0, 1))
    f = QPoly.from_quaternion(I, 1) * x + QPoly.from_quaternion(J, 1)
    assert f.evaluate((2,)) == Quaternion(0, 2, 1)
    with pytest.raises(VariableCountError):
        X.evaluate((1,))


@given(qpolys(2), qpolys(2), st.tuples(rationals, rationals))
def test_evaluation_is_multiplicative(f, g, a):
    assert (f * g).evaluate(a) == f.evaluate(a) * g.evaluate(a)
    assert (f + g).evaluate(a) == f.evaluate(a) + g.evaluate(a)


@given(polys(2), polys(2))
def test_embedding_is_a_monomorphism(p, q):
    e = QPoly.from_poly
    assert e(p * q) == e(p) * e(q)
    assert e(p + q) == e(p) + e(q)
    assert (e(p) == e(q)) == (p == q)


@given(qpolys(2))
def test_scalar_part_of_hermitian_square(f):
    sq = f.star() * f
    assert sq.comp[0] == sum((c * c for c in f.comp), Poly.zero(2))
    assert not any(sq.comp[1:])


@given(qpolys(2), qpolys(2))
def test_involution_laws(f, g):
    assert f.star().star() == f
    assert (f * g).star() == g.star() * f.star()


def test_canonical_terms():
    assert Poly(1, {(1,): Fraction(0)}) == Poly.zero(1)
    assert Poly(1, {(1,): 1}).terms == {(1,): Fraction(1)}


def test_monomials_up_to_counts():
    assert len(monomials_up_to(2, 2)) == 6
    assert len(monomials_up_to(3, 3)) == 20
