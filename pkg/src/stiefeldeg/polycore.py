"""Exact sparse multivariate polynomials over the rationals.

Coefficients are Python ``int`` or ``fractions.Fraction``; a Fraction with
denominator 1 is always stored as an int, which keeps the common
integer-coefficient case fast.  Monomials are tuples of non-negative ints.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from numbers import Rational
from operator import add, sub
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

__all__ = [
    "Ring",
    "Polynomial",
    "PolyMatrix",
    "RationalMatrix",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "RingMismatch",
    "NotDivisible",
    "poly_mul",
    "partial_derivative",
    "determinant",
    "evaluate",
    "to_rational",
]


class RingMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


def to_rational(c):
    """Coerce ``c`` to the canonical exact coefficient type (int or Fraction)."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return to_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return to_rational(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _canon(c):
    # hot path: arithmetic results of ints/Fractions
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class MonomialOrder:
    """A global monomial order given by an integer-tuple sort key.

    Larger key means larger monomial; ``1`` has the smallest key.
    """

    def __init__(self, name: str):
        if name not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name

    def key(self, e: Monomial) -> tuple:
        if self.name == "lex":
            return e
        return (sum(e),) + tuple(-a for a in reversed(e))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


GREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class Ring:
    """Polynomial ring Q[x_1, ..., x_n] identified by its variable names."""

    __slots__ = ("variables",)

    def __init__(self, variables: Iterable[str]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.variables = variables

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, Ring) and other.variables == self.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"Ring({list(self.variables)!r})"

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = to_rational(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != self.nvars or any(a < 0 for a in exps):
            raise ValueError(f"bad exponent vector {exps} for {self}")
        c = to_rational(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def gen(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(a < 0 for a in e):
                    raise ValueError(f"monomial {e} does not fit {ring}")
                c = to_rational(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
            self._terms = clean
        self._hash = None

    # -- basic access ------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, e) -> int | Fraction:
        return self._terms.get(tuple(e), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1."""
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        """Terms, largest monomial first."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self._terms[self.leading_monomial(order)]

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        try:
            return self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            v = _canon(terms.get(e, 0) + c)
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Polynomial(self.ring, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = to_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: _canon(v * c) for e, v in self._terms.items()}, _trusted=True)

    def mul_term(self, mono: Monomial, c) -> Polynomial:
        """Multiply by the single term ``c * x^mono``."""
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(map(add, e, mono)): _canon(v * c) for e, v in self._terms.items()},
            _trusted=True,
        )

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(Fraction(1) / self.leading_coefficient(order))

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Quotient ``self / other``; raises NotDivisible unless the division is exact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lm = other.leading_monomial(GREVLEX)
        lc = other._terms[lm]
        rem = dict(self._terms)
        quot = {}
        key = GREVLEX.key
        while rem:
            m = max(rem, key=key)
            c = rem[m]
            q = tuple(map(sub, m, lm))
            if any(a < 0 for a in q):
                raise NotDivisible("polynomial division leaves a remainder")
            qc = _canon(Fraction(c) / lc)
            quot[q] = qc
            for e, v in other._terms.items():
                mm = tuple(map(add, e, q))
                nv = _canon(rem.get(mm, 0) - qc * v)
                if nv:
                    rem[mm] = nv
                else:
                    rem.pop(mm, None)
        return Polynomial(self.ring, quot, _trusted=True)

    # -- calculus / evaluation --------------------------------------------

    def diff(self, var_index: int) -> Polynomial:
        return partial_derivative(self, var_index)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def evaluate_float(self, point: Sequence[float]) -> float:
        return _eval_generic(self, [float(v) for v in point], float)

    def abs_term_sum(self, point: Sequence[float]) -> float:
        """Sum of |term| at ``point``; the natural magnitude scale for rounding checks."""
        pt = [abs(float(v)) for v in point]
        total = 0.0
        for e, c in self._terms.items():
            t = abs(float(c))
            for v, a in zip(pt, e):
                if a:
                    t *= v**a
            total += t
        return total

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0,) * self.ring.nvars: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .polyparse import format_poly

        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        from .polyparse import format_poly

        return format_poly(self)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact product of two polynomials over the same ring."""
    if p.ring != q.ring:
        raise RingMismatch(f"{p.ring} vs {q.ring}")
    if len(p._terms) > len(q._terms):
        p, q = q, p
    out: dict = {}
    get = out.get
    qitems = list(q._terms.items())
    for e1, c1 in p._terms.items():
        for e2, c2 in qitems:
            m = tuple(map(add, e1, e2))
            out[m] = get(m, 0) + c1 * c2
    terms = {}
    for m, c in out.items():
        if c:
            terms[m] = _canon(c)
    return Polynomial(p.ring, terms, _trusted=True)


def partial_derivative(p: Polynomial, var_index: int) -> Polynomial:
    n = p.ring.nvars
    if not 0 <= var_index < n:
        raise IndexError(f"variable index {var_index} out of range for {n} variables")
    terms = {}
    for e, c in p._terms.items():
        a = e[var_index]
        if a:
            terms[e[:var_index] + (a - 1,) + e[var_index + 1 :]] = _canon(c * a)
    return Polynomial(p.ring, terms, _trusted=True)


def _eval_generic(p: Polynomial, point, zero_type):
    total = zero_type(0)
    for e, c in p._terms.items():
        t = zero_type(c) if zero_type is float else c
        for v, a in zip(point, e):
            if a:
                t = t * v**a
        total = total + t
    return total


def evaluate(p: Polynomial, point: Sequence) -> int | Fraction:
    """Exact value of ``p`` at a rational point."""
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {p.ring.nvars} variables")
    pt = [to_rational(v) for v in point]
    return _canon(Fraction(_eval_generic(p, pt, Fraction)))


class PolyMatrix:
    """Dense rows x cols matrix of polynomials over one shared ring."""

    def __init__(self, entries: Sequence[Sequence[Polynomial]], ring: Ring | None = None):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("PolyMatrix needs at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        if ring is None:
            ring = next((e.ring for r in rows for e in r if isinstance(e, Polynomial)), None)
            if ring is None:
                raise ValueError("cannot infer ring from a matrix of plain constants")
        grid = []
        for r in rows:
            out = []
            for e in r:
                if isinstance(e, Polynomial):
                    if e.ring != ring:
                        raise RingMismatch("matrix entries live in different rings")
                    out.append(e)
                else:
                    out.append(ring.const(e))
            grid.append(tuple(out))
        self.ring = ring
        self.entries = tuple(grid)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> tuple:
        return self.entries[i]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.ring)

    def left_multiply(self, Q: Sequence[Sequence]) -> PolyMatrix:
        """Return ``Q @ self`` for a constant rational matrix ``Q``."""
        n = self.nrows
        if len(Q) != n or any(len(r) != n for r in Q):
            raise ValueError("row transform must be square of size nrows")
        out = []
        for qi in Q:
            row = []
            for j in range(self.ncols):
                acc = self.ring.zero()
                for l, c in enumerate(qi):
                    if c:
                        acc = acc + self.entries[l][j].scale(c)
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.ring)

    def determinant(self) -> Polynomial:
        return determinant(self)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"PolyMatrix({[[str(e) for e in r] for r in self.entries]!r})"


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det_cofactor(rows, ring: Ring) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[1][0] * rows[0][1]
    # Laplace expansion along the sparsest row
    zero_counts = [sum(1 for e in r if not e) for r in rows]
    i = zero_counts.index(max(zero_counts))
    acc = ring.zero()
    for j, e in enumerate(rows[i]):
        if not e:
            continue
        minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
        term = e * _det_cofactor(minor, ring)
        acc = acc + term if (i + j) % 2 == 0 else acc - term
    return acc


def _det_bareiss(rows, ring: Ring) -> Polynomial:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if k else num
            a[i][k] = ring.zero()
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def determinant(M: PolyMatrix) -> Polynomial:
    """Exact determinant: cofactor expansion up to 4x4, fraction-free Bareiss above."""
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of a non-square {M.nrows}x{M.ncols} matrix")
    rows = [list(r) for r in M.entries]
    if M.nrows <= 4:
        return _det_cofactor(rows, M.ring)
    return _det_bareiss(rows, M.ring)


def det_leibniz(M: PolyMatrix) -> Polynomial:
    """Permutation-sum determinant; exponential, used only as a cross-check."""
    n = M.nrows
    acc = M.ring.zero()
    for perm in permutations(range(n)):
        term = M.ring.const(_perm_sign(perm))
        for i, j in enumerate(perm):
            term = term * M.entries[i][j]
            if not term:
                break
        acc = acc + term
    return acc


class RationalMatrix:
    """Square matrix of exact rationals, stored as a tuple of row tuples."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        if isinstance(rows, RationalMatrix):
            rows = rows.rows
        rows = tuple(tuple(to_rational(c) for c in r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("RationalMatrix must be square")
        self.rows = rows

    @classmethod
    def zeros(cls, d: int) -> RationalMatrix:
        return cls([[0] * d for _ in range(d)])

    @classmethod
    def identity(cls, d: int) -> RationalMatrix:
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self.rows == other.rows
        try:
            return self.rows == RationalMatrix(other).rows
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({[[str(c) for c in r] for r in self.rows]})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_symmetric(self) -> bool:
        d = self.dim
        return all(self.rows[i][j] == self.rows[j][i] for i in range(d) for j in range(i + 1, d))

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(list(zip(*self.rows)) if self.rows else [])

    def trace(self):
        return _canon(sum((self.rows[i][i] for i in range(self.dim)), 0))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        cols = list(zip(*other.rows))
        return RationalMatrix(
            [[_canon(sum((a * b for a, b in zip(r, c) if a and b), 0)) for c in cols] for r in self.rows]
        )

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> RationalMatrix:
        return RationalMatrix([[a * c for a in r] for r in self.rows])

    def determinant(self):
        """Exact determinant by Gaussian elimination over Q."""
        a = [[Fraction(c) for c in r] for r in self.rows]
        n = len(a)
        det = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return 0
            if p != k:
                a[k], a[p] = a[p], a[k]
                det = -det
            det *= a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] * inv
                    row_k = a[k]
                    a[i] = [x - f * y for x, y in zip(a[i], row_k)]
        return _canon(det)

    def commutes_with(self, other: RationalMatrix) -> bool:
        return (self @ other) == (other @ self)

    def to_float(self):
        import numpy as np

        return np.array([[float(c) for c in r] for r in self.rows], dtype=float).reshape(self.dim, self.dim)
