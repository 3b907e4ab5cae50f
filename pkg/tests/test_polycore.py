from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stiefeldeg.polycore import (
    GREVLEX,
    LEX,
    NotDivisible,
    PolyMatrix,
    Polynomial,
    RationalMatrix,

    RingMismatch,
    det_leibniz,
    determinant,
    evaluate,
    partial_derivative,
)
from strategies import RING2, RING3, polynomials, rationals

x, y, z = RING3.gens()
points = st.tuples(rationals, rationals, rationals)


def test_coefficients_are_canonical():
    p = Polynomial(RING3, {(1, 0, 0): Fraction(4, 2), (0, 1, 0): Fraction(0), (0, 0, 0): 3})
    assert p.coeff((1, 0, 0)) == 2 and type(p.coeff((1, 0, 0))) is int
    assert (0, 1, 0) not in p.terms
    assert len(p) == 2


def test_orders():
    p = x * y**2 + x**3 + z**3
    # grevlex: ties on degree broken by the smallest power of the last variable
    assert p.leading_monomial(GREVLEX) == (3, 0, 0)
    assert p.leading_monomial(LEX) == (3, 0, 0)
    q = y**3 + x * z
    assert q.leading_monomial(GREVLEX) == (0, 3, 0)
    assert q.leading_monomial(LEX) == (1, 0, 1)
    assert [m for m, _ in (x * z + y**2).sorted_terms(GREVLEX)] == [(0, 2, 0), (1, 0, 1)]


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        x + RING2.gen(0)


def test_derivative_and_bad_index():
    p = x**3 * y - 2 * z + 5
    assert p.diff(0) == 3 * x**2 * y
    assert partial_derivative(p, 2) == -2
    with pytest.raises(IndexError):
        partial_derivative(p, 3)


def test_evaluate_exact_and_arity():
    p = x**2 - Fraction(1, 3) * y * z
    assert evaluate(p, [Fraction(1, 2), 3, 1]) == Fraction(1, 4) - 1
    with pytest.raises(ValueError):
        evaluate(p, [1, 2])


def test_exact_division():
    p = (x + y) * (x - 2 * z + 1)
    assert p.exact_div(x + y) == x - 2 * z + 1
    with pytest.raises(NotDivisible):
        (x + 1).exact_div(y)
    with pytest.raises(ZeroDivisionError):
        x.exact_div(RING3.zero())


def test_determinant_2x2_and_empty_rational():
    M = PolyMatrix([[x, y], [z, x + 1]])
    assert determinant(M) == x * x + x - y * z
    assert RationalMatrix([]).determinant() == 1


@given(polynomials(), polynomials(), polynomials())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0
    assert p * RING3.one() == p


@given(polynomials(), polynomials(), points)
@settings(max_examples=60, deadline=None)
def test_evaluation_is_homomorphism(p, q, pt):
    assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)
    assert evaluate(p + q, pt) == evaluate(p, pt) + evaluate(q, pt)


@given(polynomials(), polynomials())
@settings(max_examples=40, deadline=None)
def test_leibniz_rule(p, q):
    for i in range(3):
        assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


@given(polynomials(), polynomials())
@settings(max_examples=40, deadline=None)
def test_exact_division_roundtrip(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_div(q) == p


def _matrix(draw, d, ring=RING2):
    return [[draw(polynomials(ring, max_terms=3, max_exp=2)) for _ in range(d)] for _ in range(d)]


@given(st.data(), st.integers(2, 4))
@settings(max_examples=30, deadline=None)
def test_determinant_alternating_and_multilinear(data, d):
    rows = _matrix(data.draw, d)
    det = determinant(PolyMatrix(rows, RING2))
    swapped = [rows[1], rows[0]] + rows[2:]
    assert determinant(PolyMatrix(swapped, RING2)) == -det
    repeated = [rows[0], rows[0]] + rows[2:]
    assert determinant(PolyMatrix(repeated, RING2)).is_zero()
    c = data.draw(polynomials(RING2, max_terms=2, max_exp=1))
    scaled = [[c * e for e in rows[0]]] + rows[1:]
    assert determinant(PolyMatrix(scaled, RING2)) == c * det


@given(st.data(), st.integers(5, 6))
@settings(max_examples=8, deadline=None)
def test_bareiss_matches_leibniz(data, d):
    rows = [[data.draw(polynomials(RING2, max_terms=2, max_exp=1)) for _ in range(d)] for _ in range(d)]
    M = PolyMatrix(rows, RING2)
    assert determinant(M) == det_leibniz(M)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_determinant_commutes_with_evaluation(data):
    rows = _matrix(data.draw, 3)
    pt = data.draw(st.tuples(rationals, rationals))
    det = determinant(PolyMatrix(rows, RING2))
    values = RationalMatrix([[evaluate(e, pt) for e in r] for r in rows])
    assert evaluate(det, pt) == values.determinant()


def test_left_multiply_det_one_keeps_maximal_minor():
    A = PolyMatrix([[x, y], [y, z], [1, x]])
    Q = [[1, 2, 0], [0, 1, 0], [0, 0, 1]]
    B = A.left_multiply(Q)
    assert B.row(0) == (x + 2 * y, y + 2 * z)
    assert determinant(B.submatrix([0, 1], [0, 1])) == determinant(A.submatrix([0, 1], [0, 1]))


def test_rational_matrix_ops():
    A = RationalMatrix([[1, 2], [3, 4]])
    B = RationalMatrix([[0, 1], [1, 0]])
    assert (A @ B).tolist() == [[2, 1], [4, 3]]
    assert A.determinant() == -2
    assert A.transpose().tolist() == [[1, 3], [2, 4]]
    assert A.trace() == 5
    assert not A.is_symmetric() and B.is_symmetric()
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2]])
