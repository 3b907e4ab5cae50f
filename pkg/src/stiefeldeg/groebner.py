"""Buchberger's algorithm, normal forms, and finite-dimensional quotient algebras."""

from __future__ import annotations

import heapq
from operator import add, sub
from typing import Sequence

from .errors import NotZeroDimensional, ResourceLimitExceeded
from .polycore import GREVLEX, MonomialOrder, Polynomial, RationalMatrix, Ring, RingMismatch, _canon

__all__ = [
    "DEFAULT_MAX_REDUCTIONS",
    "GroebnerBasis",
    "QuotientAlgebra",
    "buchberger",
    "normal_form",
    "is_zero_dimensional",
    "quotient_algebra",
    "trace_of",
]

DEFAULT_MAX_REDUCTIONS = 200_000


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _neg_key(order: MonomialOrder, e):
    return tuple(-v for v in order.key(e))


class _Reducer:
    """Division by a list of monic polynomials with precomputed leading data."""

    def __init__(self, polys: Sequence[Polynomial], order: MonomialOrder):
        self.order = order
        self.lms = []
        self.tails = []
        for g in polys:
            lm = g.leading_monomial(order)
            lc = g.coeff(lm)
            if lc != 1:
                raise ValueError("reducer expects monic polynomials")
            self.lms.append(lm)
            self.tails.append([(e, c) for e, c in g.items() if e != lm])

    def find(self, m):
        for i, lm in enumerate(self.lms):
            if _divides(lm, m):
                return i
        return None

    def reduce(self, p: dict) -> dict:
        """Full normal form of the term dict ``p`` (consumed)."""
        order = self.order
        heap = [(_neg_key(order, e), e) for e in p]
        heapq.heapify(heap)
        rem = {}
        lms, tails = self.lms, self.tails
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            idx = None
            for i, lm in enumerate(lms):
                if all(x <= y for x, y in zip(lm, m)):
                    idx = i
                    break
            if idx is None:
                rem[m] = c
                continue
            q = tuple(map(sub, m, lms[idx]))
            for e, v in tails[idx]:
                mm = tuple(map(add, e, q))
                old = p.get(mm)
                if old is None:
                    p[mm] = _canon(-c * v)
                    heapq.heappush(heap, (_neg_key(order, mm), mm))
                else:
                    nv = _canon(old - c * v)
                    if nv:
                        p[mm] = nv
                    else:
                        del p[mm]
        return rem


class GroebnerBasis:
    """Reduced, monic Groebner basis; generators sorted by leading monomial, largest first."""

    def __init__(self, ring: Ring, generators: Sequence[Polynomial], order: MonomialOrder = GREVLEX):
        self.ring = ring
        self.order = order
        self.generators = tuple(generators)
        self._reducer = _Reducer(self.generators, order)

    @property
    def leading_monomials(self) -> list:
        return list(self._reducer.lms)

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatch(f"{p.ring} vs {self.ring}")
        return Polynomial(self.ring, self._reducer.reduce(p.terms), _trusted=True)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order == other.order
            and set(self.generators) == set(other.generators)
        )

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.generators]}, order={self.order.name})"


def _spoly(f: Polynomial, g: Polynomial, lmf, lmg) -> dict:
    L = _lcm(lmf, lmg)
    uf = tuple(map(sub, L, lmf))
    ug = tuple(map(sub, L, lmg))
    out = {}
    for e, c in f.items():
        out[tuple(map(add, e, uf))] = c
    for e, c in g.items():
        m = tuple(map(add, e, ug))
        v = _canon(out.get(m, 0) - c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    max_reductions: int = DEFAULT_MAX_REDUCTIONS,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal spanned by ``generators``.

    Pairs are pruned with the Gebauer-Moeller installation of Buchberger's
    coprime and chain criteria.  Raises ResourceLimitExceeded after
    ``max_reductions`` S-polynomial reductions.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("need at least one generator")
    ring = generators[0].ring
    if any(g.ring != ring for g in generators):
        raise RingMismatch("generators live in different rings")
    if not gens:
        raise ValueError("need at least one nonzero generator")
    if any(g.is_constant() for g in gens):
        return GroebnerBasis(ring, [ring.one()], order)

    polys: list[Polynomial] = []
    lms: list = []
    basis: list[int] = []  # indices of the current (minimal) basis
    pairs: list[tuple[int, int]] = []

    def update(h: int):
        nonlocal basis, pairs
        lh = lms[h]
        cand = [(h, g) for g in basis]
        kept = []
        for idx, (_, g1) in enumerate(cand):
            l1 = _lcm(lh, lms[g1])
            if _coprime(lh, lms[g1]):
                kept.append((h, g1))
                continue
            others = [g2 for _, g2 in cand[idx + 1 :]] + [g2 for _, g2 in kept]
            if not any(_divides(_lcm(lh, lms[g2]), l1) for g2 in others):
                kept.append((h, g1))
        new_pairs = [p for p in kept if not _coprime(lh, lms[p[1]])]
        old = []
        for a, b in pairs:
            lab = _lcm(lms[a], lms[b])
            if _divides(lh, lab) and _lcm(lms[a], lh) != lab and _lcm(lms[b], lh) != lab:
                continue
            old.append((a, b))
        pairs = old + new_pairs
        basis = [g for g in basis if not _divides(lh, lms[g])] + [h]

    def add_poly(p: Polynomial) -> int:
        p = p.monic(order)
        polys.append(p)
        lms.append(p.leading_monomial(order))
        return len(polys) - 1

    # interreduce inputs by processing them in increasing leading-monomial order
    for g in sorted(gens, key=lambda g: order.key(g.leading_monomial(order))):
        current = [polys[i] for i in basis]
        h = Polynomial(ring, _Reducer(current, order).reduce(g.monic(order).terms), _trusted=True) if current else g
        if h.is_zero():
            continue
        if h.is_constant():
            return GroebnerBasis(ring, [ring.one()], order)
        update(add_poly(h))

    reductions = 0
    key = order.key
    while pairs:
        # normal selection strategy: smallest lcm first
        best = min(range(len(pairs)), key=lambda i: key(_lcm(lms[pairs[i][0]], lms[pairs[i][1]])))
        a, b = pairs.pop(best)
        reductions += 1
        if reductions > max_reductions:
            raise ResourceLimitExceeded(f"Buchberger exceeded {max_reductions} S-pair reductions")
        s = _spoly(polys[a], polys[b], lms[a], lms[b])
        red = _Reducer([polys[i] for i in basis], order).reduce(s)
        if not red:
            continue
        h = Polynomial(ring, red, _trusted=True)
        if h.is_constant():
            return GroebnerBasis(ring, [ring.one()], order)
        update(add_poly(h))

    return GroebnerBasis(ring, _reduce_basis([polys[i] for i in basis], order), order)


def _reduce_basis(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    G = [g.monic(order) for g in G]
    out = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1 :]
        lm = g.leading_monomial(order)
        tail = {e: c for e, c in g.items() if e != lm}
        red = _Reducer(others, order).reduce(tail) if others else tail
        red[lm] = 1
        out.append(Polynomial(g.ring, red, _trusted=True))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return out


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` modulo ``gb``: no term divisible by any leading monomial."""
    return gb.normal_form(p)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    if gb.is_unit():
        return True
    n = gb.ring.nvars
    found = [False] * n
    for lm in gb.leading_monomials:
        support = [i for i, a in enumerate(lm) if a]
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


class QuotientAlgebra:
    """The algebra Q[x]/I for a zero-dimensional ideal I.

    ``basis`` lists the standard monomials in increasing order, so ``1`` comes
    first whenever the algebra is nonzero.  Elements are represented by their
    coordinate vectors against this basis.
    """

    def __init__(self, gb: GroebnerBasis):
        if not is_zero_dimensional(gb):
            raise NotZeroDimensional("ideal is not zero-dimensional")
        self.gb = gb
        self.ring = gb.ring
        self.order = gb.order
        self.basis: tuple = tuple(_standard_monomials(gb))
        self.index = {b: i for i, b in enumerate(self.basis)}
        d = len(self.basis)
        # products[i][j] = coordinates of b_i * b_j
        self._products = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                mono = tuple(map(add, self.basis[i], self.basis[j]))
                vec = self._coords_of_terms({mono: 1})
                self._products[i][j] = vec
                self._products[j][i] = vec
        self.trace_cache = {
            b: _canon(sum((self._products[c][j][j] for j in range(d)), 0)) for c, b in enumerate(self.basis)
        }
        self.mult_matrices = tuple(self.multiplication_matrix(x) for x in self.ring.gens())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _coords_of_terms(self, terms: dict) -> tuple:
        rem = self.gb._reducer.reduce(dict(terms))
        vec = [0] * len(self.basis)
        for e, c in rem.items():
            vec[self.index[e]] = c
        return tuple(vec)

    def coordinates(self, p: Polynomial) -> tuple:
        if p.ring != self.ring:
            raise RingMismatch(f"{p.ring} vs {self.ring}")
        return self._coords_of_terms(p.terms)

    def element(self, coords: Sequence) -> Polynomial:
        return Polynomial(self.ring, {b: c for b, c in zip(self.basis, coords) if c}, _trusted=True)

    def basis_polynomials(self) -> list[Polynomial]:
        return [self.ring.monomial(b) for b in self.basis]

    def multiplication_matrix(self, h: Polynomial) -> RationalMatrix:
        """Matrix of a -> h*a; column j holds the coordinates of h*b_j."""
        hv = self.coordinates(h)
        d = self.dim
        cols = []
        for j in range(d):
            col = [0] * d
            for c, hc in enumerate(hv):
                if hc:
                    prod = self._products[c][j]
                    for i in range(d):
                        if prod[i]:
                            col[i] += hc * prod[i]
            cols.append(col)
        return RationalMatrix([[cols[j][i] for j in range(d)] for i in range(d)])

    def trace(self, h: Polynomial):
        hv = self.coordinates(h)
        return _canon(sum((c * self.trace_cache[b] for c, b in zip(hv, self.basis) if c), 0))

    def product_coordinates(self, i: int, j: int) -> tuple:
        return self._products[i][j]

    def trace_matrix(self, h: Polynomial) -> RationalMatrix:
        """Matrix with entries T(h * b_i * b_j)."""
        d = self.dim
        H = [[self._trace_vec(self._products[i][j]) for j in range(d)] for i in range(d)]
        # row i of C = coordinates of h*b_i; then T(h b_i b_j) = sum_c C[i][c] * H[c][j]
        M = self.multiplication_matrix(h)
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                s = 0
                for c in range(d):
                    a = M.rows[c][i]
                    if a and H[c][j]:
                        s += a * H[c][j]
                row.append(s)
            out.append(row)
        return RationalMatrix(out)

    def _trace_vec(self, vec):
        return _canon(sum((c * self.trace_cache[self.basis[k]] for k, c in enumerate(vec) if c), 0))

    def __repr__(self):
        return f"QuotientAlgebra(dim={self.dim}, order={self.order.name})"


def _standard_monomials(gb: GroebnerBasis) -> list:
    n = gb.ring.nvars
    if gb.is_unit():
        return []
    lms = gb.leading_monomials
    one = (0,) * n
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                e = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if e in seen or any(_divides(lm, e) for lm in lms):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
    return sorted(seen, key=gb.order.key)


def quotient_algebra(gb: GroebnerBasis) -> QuotientAlgebra:
    return QuotientAlgebra(gb)


def trace_of(h: Polynomial, A: QuotientAlgebra):
    """Trace of multiplication by ``h`` on ``A``."""
    return A.trace(h)
