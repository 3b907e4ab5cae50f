"""Exact inertia of symmetric rational matrices and trace quadratic forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groebner import QuotientAlgebra
from .polycore import Polynomial, RationalMatrix

__all__ = ["SymmetricForm", "Inertia", "trace_form", "inertia", "is_nondegenerate", "signature"]


@dataclass(frozen=True)
class Inertia:
    positives: int
    negatives: int
    zeros: int

    @property
    def dimension(self) -> int:
        return self.positives + self.negatives + self.zeros

    @property
    def signature(self) -> int:
        return self.positives - self.negatives

    @property
    def rank(self) -> int:
        return self.positives + self.negatives


@dataclass(frozen=True)
class SymmetricForm:
    matrix: RationalMatrix
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.matrix, RationalMatrix):
            object.__setattr__(self, "matrix", RationalMatrix(self.matrix))
        if not self.matrix.is_symmetric():
            raise ValueError(f"form {self.label!r} is not symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.dim


def trace_form(h: Polynomial, A: QuotientAlgebra, label: str = "") -> SymmetricForm:
    """The form a -> T(h*a^2) on A, as the matrix of T(h*b_i*b_j)."""
    return SymmetricForm(A.trace_matrix(h), label)


def inertia(Q) -> Inertia:
    """Inertia by exact symmetric congruence (LDL^T with 2x2 hyperbolic steps).

    A nonzero diagonal entry is eliminated directly.  When the remaining block
    has a zero diagonal but a nonzero entry a_ij, the pair (i, j) spans a
    hyperbolic plane contributing one positive and one negative square.
    """
    M = Q.matrix if isinstance(Q, SymmetricForm) else Q
    if not isinstance(M, RationalMatrix):
        M = RationalMatrix(M)
    if not M.is_symmetric():
        raise ValueError("inertia needs a symmetric matrix")
    a = [[Fraction(c) for c in r] for r in M.rows]
    pos = neg = 0
    while a:
        n = len(a)
        # prefer the smallest nonzero diagonal pivot to limit coefficient growth
        piv = None
        for i in range(n):
            if a[i][i] and (piv is None or abs(a[i][i]) < abs(a[piv][piv])):
                piv = i
        if piv is not None:
            p = a[piv][piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != piv]
            col = [a[i][piv] for i in rest]
            a = [
                [a[i][j] - col[ii] * col[jj] / p if col[ii] and col[jj] else a[i][j] for jj, j in enumerate(rest)]
                for ii, i in enumerate(rest)
            ]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j]), None)
        if pair is None:
            return Inertia(pos, neg, n)
        i, j = pair
        pos += 1
        neg += 1
        b = a[i][j]
        rest = [r for r in range(n) if r not in (i, j)]
        # Schur complement of [[0, b], [b, 0]]: A - U B^{-1} U^T, B^{-1} = [[0, 1/b], [1/b, 0]]
        ui = [a[r][i] for r in rest]
        uj = [a[r][j] for r in rest]
        a = [
            [a[r][s] - (ui[rr] * uj[ss] + uj[rr] * ui[ss]) / b for ss, s in enumerate(rest)]
            for rr, r in enumerate(rest)
        ]
    return Inertia(pos, neg, 0)


def signature(Q) -> int:
    return inertia(Q).signature


def is_nondegenerate(Q) -> bool:
    M = Q.matrix if isinstance(Q, SymmetricForm) else RationalMatrix(Q)
    return M.determinant() != 0
