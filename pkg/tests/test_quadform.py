from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stiefeldeg.oracle import descartes_inertia
from stiefeldeg.polycore import RationalMatrix
from stiefeldeg.quadform import Inertia, SymmetricForm, inertia, is_nondegenerate, signature
from strategies import symmetric_matrices, unimodular_like


def test_example_forms():
    assert signature(RationalMatrix([[Fraction(-21, 2), Fraction(-27, 2)], [Fraction(-27, 2), Fraction(27, 2)]])) == 0
    assert signature(RationalMatrix([[Fraction(-99, 4), Fraction(27, 4)], [Fraction(27, 4), Fraction(-27, 4)]])) == -2


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0, 1], [1, 0]], Inertia(1, 1, 0)),
        ([[0, 0], [0, 0]], Inertia(0, 0, 2)),
        ([[1, 1], [1, 1]], Inertia(1, 0, 1)),
        ([[0, 0, 1], [0, 0, 0], [1, 0, 0]], Inertia(1, 1, 1)),
        ([[0, 2, 3], [2, 0, 5], [3, 5, 0]], None),
        ([[-3]], Inertia(0, 1, 0)),
        ([], Inertia(0, 0, 0)),
    ],
)
def test_inertia_cases(rows, expected):
    got = inertia(RationalMatrix(rows))
    if expected is None:
        expected = Inertia(*descartes_inertia(RationalMatrix(rows)))
    assert got == expected


def test_symmetric_form_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymmetricForm([[1, 2], [3, 4]])


def test_nondegenerate():
    assert is_nondegenerate(RationalMatrix([[0, 1], [1, 0]]))
    assert not is_nondegenerate(RationalMatrix([[1, 1], [1, 1]]))


@given(symmetric_matrices())
@settings(max_examples=80, deadline=None)
def test_inertia_matches_descartes(Q):
    i = inertia(Q)
    assert (i.positives, i.negatives, i.zeros) == descartes_inertia(Q)
    assert i.dimension == Q.dim
    assert i.rank % 2 == i.signature % 2


@given(symmetric_matrices(max_dim=6, coeffs=st.integers(-2, 2)), st.data())
@settings(max_examples=60, deadline=None)
def test_congruence_invariance(Q, data):
    P = unimodular_like(Q.dim, lambda: data.draw(st.integers(-3, 3)))
    assert inertia(P.transpose() @ Q @ P) == inertia(Q)
    c = data.draw(st.fractions(min_value=Fraction(1, 10), max_value=10))
    assert inertia(Q.scale(c)) == inertia(Q)
    neg = inertia(Q.scale(-1))
    assert (neg.positives, neg.negatives) == (inertia(Q).negatives, inertia(Q).positives)
