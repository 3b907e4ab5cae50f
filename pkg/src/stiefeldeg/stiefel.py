"""Lambda of a polynomial frame restricted to a compact hypersurface.

Pipeline: maximal minors -> Groebner basis -> quotient algebra A -> pivot
minor check -> bordered determinants Delta_k..Delta_n -> Jacobian delta ->
trace forms of delta and f*delta on A -> signatures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DegenerateForm, NotZeroDimensional, PivotMinorDegenerate, ValidationError
from .groebner import (
    DEFAULT_MAX_REDUCTIONS,
    GroebnerBasis,
    QuotientAlgebra,
    buchberger,
    is_zero_dimensional,
    quotient_algebra,
)
from .polycore import GREVLEX, MonomialOrder, PolyMatrix, Polynomial, determinant
from .quadform import SymmetricForm, inertia, trace_form

__all__ = [
    "StiefelProblem",
    "RetryPolicy",
    "RowTransform",
    "HypothesisReport",
    "LambdaReport",
    "PreparedProblem",
    "minors_ideal",
    "pivot_minor",
    "delta_polynomials",
    "jacobian_delta",
    "random_row_transform",
    "verify_hypotheses",
    "prepare",
    "compute_lambda",
    "real_point_count",
    "regularity_diagnostic",
    "rank_stratum_diagnostic",
]


@dataclass(frozen=True)
class StiefelProblem:
    """An n x k polynomial frame in n-k+1 variables plus the hypersurface polynomial f."""

    A: PolyMatrix
    f: Polynomial

    def __post_init__(self):
        n, k = self.A.shape
        if k < 2:
            raise ValidationError(f"frame needs k >= 2 columns, got k={k}")
        if n - k <= 0:
            raise ValidationError(f"need n-k > 0 (rows n={n}, columns k={k})")
        if (n - k) % 2:
            raise ValidationError(f"need n-k even, got n-k={n - k}")
        if self.A.ring.nvars != n - k + 1:
            raise ValidationError(
                f"an {n}x{k} frame needs n-k+1={n - k + 1} variables, ring has {self.A.ring.nvars}"
            )
        if self.f.ring != self.A.ring:
            raise ValidationError("f and the frame live in different rings")
        if self.f.is_zero():
            raise ValidationError("hypersurface polynomial f must be nonzero")

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def k(self) -> int:
        return self.A.ncols

    @property
    def ring(self):
        return self.A.ring

    @property
    def sign_factor(self) -> int:
        return -1 if (self.k - 1) % 2 else 1


def minors_ideal(A: PolyMatrix) -> list[Polynomial]:
    """All C(n, k) maximal minors, row subsets in lexicographic order."""
    n, k = A.shape
    if n < k:
        raise ValueError("need n >= k")
    cols = list(range(k))
    return [determinant(A.submatrix(rows, cols)) for rows in combinations(range(n), k)]


def pivot_minor(A: PolyMatrix) -> Polynomial:
    """Determinant of rows 1..k-1, columns 2..k."""
    k = A.ncols
    if k < 2:
        raise ValueError("pivot minor needs k >= 2")
    return determinant(A.submatrix(range(k - 1), range(1, k)))


def delta_polynomials(A: PolyMatrix) -> list[Polynomial]:
    """Delta_i for i = k..n: the k x k determinant of rows 1..k-1 and row i."""
    n, k = A.shape
    head = list(range(k - 1))
    cols = list(range(k))
    return [determinant(A.submatrix(head + [i], cols)) for i in range(k - 1, n)]


def jacobian_delta(deltas: Sequence[Polynomial]) -> Polynomial:
    """Jacobian determinant of ``deltas`` with respect to all ring variables."""
    if not deltas:
        raise ValueError("empty list")
    ring = deltas[0].ring
    if len(deltas) != ring.nvars:
        raise ValueError(f"need {ring.nvars} polynomials for a square Jacobian, got {len(deltas)}")
    J = PolyMatrix([[d.diff(s) for s in range(ring.nvars)] for d in deltas], ring)
    return determinant(J)


@dataclass(frozen=True)
class RetryPolicy:
    retries: int = 8
    seed: int = 0


@dataclass(frozen=True)
class RowTransform:
    """Integer row transform Q (det +1) applied as A -> Q A."""

    attempt: int
    seed: int
    matrix: tuple

    def as_dict(self) -> dict:
        return {"attempt": self.attempt, "seed": self.seed, "matrix": [list(r) for r in self.matrix]}


def random_row_transform(n: int, rng: random.Random, bound: int = 3) -> tuple:
    """Product L*U of unit lower/upper triangular integer matrices, entries in [-bound, bound]."""
    L = [[1 if i == j else (rng.randint(-bound, bound) if i > j else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (rng.randint(-bound, bound) if i < j else 0) for j in range(n)] for i in range(n)]
    return tuple(tuple(sum(L[i][l] * U[l][j] for l in range(n)) for j in range(n)) for i in range(n))


@dataclass
class HypothesisReport:
    zero_dimensional: bool
    algebra_dim: int | None = None
    pivot_minor_invertible: bool | None = None
    pivot_minor_det: Fraction | int | None = None
    theta_delta_nondegenerate: bool | None = None
    theta_f_delta_nondegenerate: bool | None = None
    randomization_applied: RowTransform | None = None
    attempts: int = 0
    failure: str | None = None

    @property
    def all_passed(self) -> bool:
        return bool(
            self.zero_dimensional
            and self.pivot_minor_invertible
            and self.theta_delta_nondegenerate
            and self.theta_f_delta_nondegenerate
        )

    def as_dict(self) -> dict:
        return {
            "zero_dimensional": self.zero_dimensional,
            "algebra_dim": self.algebra_dim,
            "pivot_minor_invertible": self.pivot_minor_invertible,
            "pivot_minor_det": None if self.pivot_minor_det is None else _qstr(self.pivot_minor_det),
            "theta_delta_nondegenerate": self.theta_delta_nondegenerate,
            "theta_f_delta_nondegenerate": self.theta_f_delta_nondegenerate,
            "randomization_applied": None
            if self.randomization_applied is None
            else self.randomization_applied.as_dict(),
            "attempts": self.attempts,
            "all_passed": self.all_passed,
            "failure": self.failure,
        }


def _qstr(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class PreparedProblem:
    """Everything computed up to (not including) the signatures."""

    original: StiefelProblem
    problem: StiefelProblem
    report: HypothesisReport
    gb: GroebnerBasis
    algebra: QuotientAlgebra
    pivot: Polynomial
    deltas: list
    delta: Polynomial
    delta_residue: Polynomial
    theta_delta: SymmetricForm
    theta_f_delta: SymmetricForm
    timings: dict = field(default_factory=dict)


def prepare(
    P: StiefelProblem,
    policy: RetryPolicy = RetryPolicy(),
    order: MonomialOrder = GREVLEX,
    max_reductions: int = DEFAULT_MAX_REDUCTIONS,
) -> PreparedProblem:
    timings = {}
    t0 = time.perf_counter()
    minors = minors_ideal(P.A)
    timings["minors"] = time.perf_counter() - t0
    if all(m.is_zero() for m in minors):
        report = HypothesisReport(zero_dimensional=False, failure="NotZeroDimensional: all maximal minors vanish")
        raise NotZeroDimensional("all k x k minors vanish identically; V(I) is the whole space", report)

    t0 = time.perf_counter()
    gb = buchberger(minors, order, max_reductions)
    timings["groebner"] = time.perf_counter() - t0
    if not is_zero_dimensional(gb):
        report = HypothesisReport(zero_dimensional=False, failure="NotZeroDimensional: minors ideal has positive dimension")
        raise NotZeroDimensional("the ideal of maximal minors is not zero-dimensional", report)

    t0 = time.perf_counter()
    A = quotient_algebra(gb)
    timings["algebra"] = time.perf_counter() - t0
    report = HypothesisReport(zero_dimensional=True, algebra_dim=A.dim)

    # I is invariant under row transforms (Cauchy-Binet), so gb and A are reused.
    rng = random.Random(policy.seed)
    problem = P
    t0 = time.perf_counter()
    attempt = 0
    while True:
        m = pivot_minor(problem.A)
        mdet = A.multiplication_matrix(m).determinant()
        report.attempts = attempt + 1
        if mdet != 0:
            break
        if attempt >= policy.retries:
            report.pivot_minor_invertible = False
            report.pivot_minor_det = mdet
            report.failure = f"PivotMinorDegenerate: pivot minor not invertible modulo I after {attempt} retries"
            raise PivotMinorDegenerate(
                f"pivot minor is not invertible modulo I (retries exhausted: {policy.retries})", report
            )
        attempt += 1
        Q = random_row_transform(problem.n, rng)
        problem = StiefelProblem(P.A.left_multiply(Q), P.f)
        report.randomization_applied = RowTransform(attempt, policy.seed, Q)
    report.pivot_minor_invertible = True
    report.pivot_minor_det = mdet
    timings["pivot"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    deltas = delta_polynomials(problem.A)
    delta = jacobian_delta(deltas)
    delta_res = gb.normal_form(delta)
    timings["delta"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    th_d = trace_form(delta_res, A, "theta_delta")
    th_fd = trace_form(gb.normal_form(P.f * delta_res), A, "theta_f_delta")
    report.theta_delta_nondegenerate = th_d.matrix.determinant() != 0
    report.theta_f_delta_nondegenerate = th_fd.matrix.determinant() != 0
    timings["trace_forms"] = time.perf_counter() - t0
    if not report.all_passed:
        names = [n for n, ok in (("theta_delta", report.theta_delta_nondegenerate),
                                 ("theta_f_delta", report.theta_f_delta_nondegenerate)) if not ok]
        report.failure = "DegenerateForm: " + ", ".join(names)

    return PreparedProblem(P, problem, report, gb, A, m, deltas, delta, delta_res, th_d, th_fd, timings)


def verify_hypotheses(
    P: StiefelProblem,
    policy: RetryPolicy = RetryPolicy(),
    order: MonomialOrder = GREVLEX,
    max_reductions: int = DEFAULT_MAX_REDUCTIONS,
) -> tuple[HypothesisReport, StiefelProblem]:
    """Check the hypotheses of the signature formula; returns the report and the
    (possibly row-transformed) problem.  Raises NotZeroDimensional or
    PivotMinorDegenerate; degenerate trace forms are only flagged."""
    prep = prepare(P, policy, order, max_reductions)
    return prep.report, prep.problem


@dataclass
class LambdaReport:
    lambda_value: int
    signature_delta: int
    signature_f_delta: int
    algebra_dim: int
    k: int
    gb: GroebnerBasis
    delta_residue: Polynomial
    hypotheses: HypothesisReport
    prepared: PreparedProblem = field(repr=False)
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        total = self.signature_delta + self.signature_f_delta
        if total % 2:
            raise AssertionError(f"signature sum {total} is odd")
        sign = -1 if (self.k - 1) % 2 else 1
        if self.lambda_value != sign * total // 2:
            raise AssertionError("lambda inconsistent with signatures")

    @property
    def sign_factor(self) -> int:
        return -1 if (self.k - 1) % 2 else 1

    @property
    def theta_delta(self) -> SymmetricForm:
        return self.prepared.theta_delta

    @property
    def theta_f_delta(self) -> SymmetricForm:
        return self.prepared.theta_f_delta

    @property
    def pivot(self) -> Polynomial:
        return self.prepared.pivot

    @property
    def basis(self) -> tuple:
        return self.prepared.algebra.basis

    @property
    def problem(self) -> StiefelProblem:
        return self.prepared.problem


def compute_lambda(
    P: StiefelProblem,
    policy: RetryPolicy = RetryPolicy(),
    order: MonomialOrder = GREVLEX,
    max_reductions: int = DEFAULT_MAX_REDUCTIONS,
    prepared: PreparedProblem | None = None,
) -> LambdaReport:
    """Lambda(alpha|M) = (-1)^(k-1)/2 * (sig Theta_delta + sig Theta_{f delta})."""
    prep = prepared or prepare(P, policy, order, max_reductions)
    rep = prep.report
    for label, ok in (("theta_delta", rep.theta_delta_nondegenerate), ("theta_f_delta", rep.theta_f_delta_nondegenerate)):
        if not ok:
            raise DegenerateForm(f"trace form {label} is degenerate; the signature formula does not apply", label, rep)
    t0 = time.perf_counter()
    s1 = inertia(prep.theta_delta).signature
    s2 = inertia(prep.theta_f_delta).signature
    prep.timings["signatures"] = time.perf_counter() - t0
    k = P.k
    sign = -1 if (k - 1) % 2 else 1
    return LambdaReport(
        lambda_value=sign * (s1 + s2) // 2,
        signature_delta=s1,
        signature_f_delta=s2,
        algebra_dim=prep.algebra.dim,
        k=k,
        gb=prep.gb,
        delta_residue=prep.delta_residue,
        hypotheses=rep,
        prepared=prep,
    )


def real_point_count(algebra: QuotientAlgebra) -> int:
    """Number of distinct real points of V(I): the signature of the trace form of 1."""
    if algebra.dim == 0:
        return 0
    return inertia(trace_form(algebra.ring.one(), algebra)).signature


def _zero_dim_real_count(gens: list[Polynomial], order: MonomialOrder, max_reductions: int) -> dict:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return {"zero_dimensional": False, "real_points": None}
    gb = buchberger(gens, order, max_reductions)
    if not is_zero_dimensional(gb):
        return {"zero_dimensional": False, "real_points": None}
    return {"zero_dimensional": True, "real_points": real_point_count(quotient_algebra(gb))}


def regularity_diagnostic(
    f: Polynomial, order: MonomialOrder = GREVLEX, max_reductions: int = DEFAULT_MAX_REDUCTIONS
) -> dict:
    """Checks that grad f does not vanish on M = {f = 0}.

    ``passed`` is True when <f, df/dx_1, ...> is zero-dimensional with no real
    points, None when the ideal is positive-dimensional (undecided here).
    """
    gens = [f] + [f.diff(i) for i in range(f.ring.nvars)]
    out = _zero_dim_real_count(gens, order, max_reductions)
    out["passed"] = None if out["real_points"] is None else out["real_points"] == 0
    return out


def rank_stratum_diagnostic(
    A: PolyMatrix, order: MonomialOrder = GREVLEX, max_reductions: int = DEFAULT_MAX_REDUCTIONS
) -> dict:
    """Checks that the frame has rank exactly k-1 on V(I), i.e. V(I + I_1) has no real points,
    where I_1 is generated by the (k-1) x (k-1) minors."""
    n, k = A.shape
    gens = list(minors_ideal(A))
    for rows in combinations(range(n), k - 1):
        for cols in combinations(range(k), k - 1):
            gens.append(determinant(A.submatrix(rows, cols)))
    out = _zero_dim_real_count(gens, order, max_reductions)
    out["passed"] = None if out["real_points"] is None else out["real_points"] == 0
    return out
