from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonzero_quaternions, quaternions
from quatnss import QuatMatrix, QuatSubspace, Quaternion
from quatnss.quat import I, J, K, ONE, annihilator, component_extract, rank, row_reduce, solve_linear


def sym(q):
    return sympy.algebras.Quaternion(*(sympy.Rational(c.numerator, c.denominator) for c in q.components))


def from_sym(s):
    return Quaternion(*(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                        for c in (s.a, s.b, s.c, s.d)))


def test_unit_relations():
    assert I * J == K
    assert I * I == J * J == K * K == I * J * K == -ONE


def test_product_with_conjugate():
    q = Quaternion(1, 2)
    assert q * q.conjugate() == Quaternion(5)


@given(quaternions, quaternions)
def test_product_matches_sympy(p, q):
    assert p * q == from_sym(sym(p) * sym(q))


@pytest.mark.parametrize("w,index,expected", [
    (Quaternion(2, 3, -1, 5), 1, 2),
    (I, 2, 1),
    (Quaternion(), 3, 0),
    (Quaternion(2, 3, -1, 5), 4, 5),
])
def test_component_extract_examples(w, index, expected):
    assert component_extract(w, index) == expected


@given(quaternions, st.integers(1, 4))
def test_component_extract_matches_fields(w, index):
    assert component_extract(w, index) == w.components[index - 1]


def test_component_extract_rejects_bad_index():
    with pytest.raises(ValueError):
        component_extract(I, 0)


@given(quaternions, quaternions, quaternions)
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p * q).norm() == p.norm() * q.norm()
    assert (p * q).conjugate() == q.conjugate() * p.conjugate()
    assert p * 1 == p


@given(nonzero_quaternions)
def test_inverse_two_sided(q):
    assert q * q.inverse() == ONE == q.inverse() * q


def test_norm_zero_only_at_zero():
    assert Quaternion().norm() == 0
    assert Quaternion(0, 0, 0, Fraction(1, 3)).norm() == Fraction(1, 9)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Quaternion(0.5)


def test_row_reduce_examples():
    red = row_reduce(QuatMatrix.identity(2))
    assert red.rank == 2 and red.echelon == QuatMatrix.identity(2)
    red = row_reduce(QuatMatrix.from_rows([[I, J]]))
    assert red.echelon == QuatMatrix.from_rows([[ONE, -K]]) and red.rank == 1
    assert red.replay(QuatMatrix.from_rows([[I, J]])) == red.echelon
    assert row_reduce(QuatMatrix.zeros(2, 3)).rank == 0


def matrices(rows, cols):
    return st.lists(st.lists(quaternions, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda g: QuatMatrix.from_rows(g, cols))


@given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 3).flatmap(lambda c: matrices(r, c))))
def test_row_reduce_idempotent_and_replayable(m):
    for side in ("left", "right"):
        red = row_reduce(m, side)
        again = row_reduce(red.echelon, side)
        assert again.echelon == red.echelon and again.rank == red.rank
        assert red.replay(m) == red.echelon
    assert row_reduce(m, "left").rank == row_reduce(m, "right").rank


@given(matrices(2, 3), matrices(3, 2))
def test_rank_of_product(a, b):
    assert rank(a * b) <= min(rank(a), rank(b))


def test_annihilator_example():
    s = QuatSubspace.span("left", 2, [[I, J]])
    ann = annihilator(s)
    assert ann == QuatSubspace.span("right", 2, [[K, ONE]])
    back = annihilator(ann)
    assert back == s == QuatSubspace.span("left", 2, [[ONE, -K]])


def test_annihilator_trivial_cases():
    assert annihilator(QuatSubspace.span("left", 3, [])) == QuatSubspace.full("right", 3)
    assert annihilator(QuatSubspace.full("left", 3)).dim == 0


@given(st.integers(1, 4).flatmap(lambda m: st.lists(
    st.lists(quaternions, min_size=m, max_size=m), min_size=0, max_size=3).map(lambda vs: (m, vs))))
def test_double_annihilator(arg):
    m, vs = arg
    s = QuatSubspace.span("left", m, vs)
    ann = annihilator(s)
    assert s.dim + ann.dim == m
    assert annihilator(ann) == s
    for v in s.basis:
        for w in ann.basis:
            assert sum((a * b for a, b in zip(v, w)), Quaternion()) == Quaternion()


def test_solve_linear_examples():
    sol = solve_linear(QuatMatrix.from_rows([[ONE]]), [J])
    assert sol.consistent and sol.particular == (J,)
    sol = solve_linear(QuatMatrix.from_rows([[I, J]]), [0])
    assert sol.nullspace == QuatSubspace.span("right", 2, [[K, ONE]])
    assert not solve_linear(QuatMatrix.from_rows([[ONE], [0]]), [0, 1]).consistent


@given(matrices(2, 3), st.lists(quaternions, min_size=3, max_size=3))
def test_solve_linear_recovers_rhs(a, x):
    b = a.apply(x)
    sol = solve_linear(a, b)
    assert sol.consistent
    assert a.apply(sol.particular) == b
    for n in sol.nullspace.basis:
        assert all(q.is_zero() for q in a.apply(n))


@given(matrices(2, 2), matrices(2, 2))
def test_conjugate_transpose_reverses_products(a, b):
    assert (a * b).conjugate_transpose() == b.conjugate_transpose() * a.conjugate_transpose()
