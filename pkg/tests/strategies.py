"""Hypothesis strategies for polynomials and rational matrices."""

from fractions import Fraction

from hypothesis import strategies as st

from stiefeldeg.polycore import Polynomial, RationalMatrix, Ring

RING2 = Ring(["x", "y"])
RING3 = Ring(["x", "y", "z"])

small_ints = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def polynomials(ring=RING3, max_terms=5, max_exp=3, coeffs=rationals):
    mono = st.tuples(*[st.integers(0, max_exp) for _ in range(ring.nvars)])
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(lambda t: Polynomial(ring, t))


def symmetric_matrices(min_dim=1, max_dim=8, coeffs=rationals):
    @st.composite
    def build(draw):
        d = draw(st.integers(min_dim, max_dim))
        rows = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                rows[i][j] = rows[j][i] = draw(coeffs)
        return RationalMatrix(rows)

    return build()


def unimodular_like(d, draw_ints):
    """Invertible rational matrix L*U with unit diagonals (det 1)."""
    L = [[1 if i == j else (draw_ints() if i > j else 0) for j in range(d)] for i in range(d)]
    U = [[1 if i == j else (draw_ints() if i < j else 0) for j in range(d)] for i in range(d)]
    return RationalMatrix(L) @ RationalMatrix(U)
