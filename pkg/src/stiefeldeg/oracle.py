"""Floating-point cross-checks for the exact pipeline.

Real points of V(I) come from eigenvectors of a random combination of the
multiplication matrices: the evaluation functional at a point p is a common
left eigenvector of every multiplication matrix M_h, with eigenvalue h(p).
Lambda is then recomputed as (-1)^(k-1) * sum of sgn delta(p) over the real
points with f(p) > 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import OracleError, SignTooCloseToZero, SolverIncomplete
from .groebner import QuotientAlgebra
from .polycore import RationalMatrix
from .stiefel import PreparedProblem, RetryPolicy, StiefelProblem, prepare, real_point_count

__all__ = [
    "RealPoint",
    "OracleResult",
    "solve_real_points",
    "count_real_points",
    "lambda_by_points",
    "oracle_lambda",
    "charpoly",
    "descartes_inertia",
]

DEFAULT_TOL = 1e-8
DEFAULT_MERGE_TOL = 1e-6


@dataclass(frozen=True)
class RealPoint:
    coordinates: tuple
    residual: float
    cluster_tolerance: float

    def as_dict(self) -> dict:
        return {
            "coordinates": [float(c) for c in self.coordinates],
            "residual": float(self.residual),
            "cluster_tolerance": self.cluster_tolerance,
        }


def _relative_residual(gens, point) -> float:
    worst = 0.0
    for g in gens:
        val = abs(g.evaluate_float(point))
        scale = max(1.0, g.abs_term_sum(point))
        worst = max(worst, val / scale)
    return worst


def _newton_polish(gens, point, steps=4):
    """A few Gauss-Newton steps on the generator system; kept only if the residual drops."""
    ring = gens[0].ring
    grads = [[g.diff(i) for i in range(ring.nvars)] for g in gens]
    x = np.array(point, dtype=float)
    best = x.copy()
    best_res = _relative_residual(gens, x)
    for _ in range(steps):
        F = np.array([g.evaluate_float(x) for g in gens])
        J = np.array([[d.evaluate_float(x) for d in row] for row in grads])
        try:
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        except np.linalg.LinAlgError:
            break
        x = x + step
        res = _relative_residual(gens, x)
        if res < best_res:
            best, best_res = x.copy(), res
    return best, best_res


def solve_real_points(
    A: QuotientAlgebra,
    tol: float = DEFAULT_TOL,
    merge_tol: float = DEFAULT_MERGE_TOL,
    seed: int = 0,
) -> list[RealPoint]:
    """Real points of V(I) located by the eigenvalue method."""
    d = A.dim
    if d == 0:
        return []
    n = A.ring.nvars
    one = A.index.get((0,) * n)
    if one is None:
        raise OracleError("standard monomial basis does not contain 1")
    rng = random.Random(seed)
    coeffs = [Fraction(rng.randint(1, 1000), 997) for _ in range(n)]
    mats = [M.to_float() for M in A.mult_matrices]
    combo = sum(c * M for c, M in zip((float(c) for c in coeffs), mats))
    try:
        w, V = np.linalg.eig(combo.T)
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"eigen-solver failed: {exc}") from exc
    gens = list(A.gb.generators)
    points: list[np.ndarray] = []
    residuals: list[float] = []
    for j in range(d):
        v = V[:, j]
        if abs(v[one]) < 1e-12 * np.max(np.abs(v)):
            continue
        v = v / v[one]
        coords = np.array([(M.T @ v)[one] for M in mats])
        scale = 1.0 + np.abs(coords)
        if np.any(np.abs(coords.imag) > merge_tol * scale) or abs(w[j].imag) > merge_tol * (1 + abs(w[j])):
            continue
        x, res = _newton_polish(gens, coords.real)
        if res > tol:
            continue
        if any(np.max(np.abs(x - y) / (1 + np.abs(y))) < merge_tol for y in points):
            continue
        points.append(x)
        residuals.append(res)
    order = sorted(range(len(points)), key=lambda i: tuple(points[i]))
    return [RealPoint(tuple(float(c) for c in points[i]), residuals[i], merge_tol) for i in order]


def count_real_points(A: QuotientAlgebra) -> int:
    """Signature of the trace form of 1 (number of distinct real points)."""
    return real_point_count(A)


@dataclass
class OracleResult:
    value: int
    points: list
    delta_values: list
    f_values: list
    real_count: int
    sign_factor: int
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "lambda": self.value,
            "real_point_count": self.real_count,
            "points": [
                dict(p.as_dict(), delta=dv, f=fv)
                for p, dv, fv in zip(self.points, self.delta_values, self.f_values)
            ],
        }


def oracle_lambda(
    P: StiefelProblem,
    tol: float = DEFAULT_TOL,
    merge_tol: float = DEFAULT_MERGE_TOL,
    seed: int = 0,
    policy: RetryPolicy = RetryPolicy(),
    prepared: PreparedProblem | None = None,
) -> OracleResult:
    prep = prepared or prepare(P, policy)
    A = prep.algebra
    points = solve_real_points(A, tol, merge_tol, seed)
    count = real_point_count(A)
    if len(points) != count:
        raise SolverIncomplete(f"located {len(points)} real points but the trace form counts {count}")
    delta, residue, f = prep.delta, prep.delta_residue, prep.problem.f
    total = 0
    dvals, fvals = [], []
    for p in points:
        x = p.coordinates
        dv = delta.evaluate_float(x)
        rv = residue.evaluate_float(x)
        fv = f.evaluate_float(x)
        dscale = max(1.0, delta.abs_term_sum(x))
        fscale = max(1.0, f.abs_term_sum(x))
        if abs(dv) <= tol * dscale or abs(fv) <= tol * fscale:
            raise SignTooCloseToZero(f"delta or f too close to zero at {x}")
        if np.sign(dv) != np.sign(rv):
            raise SignTooCloseToZero(f"unreduced delta and its residue disagree in sign at {x}")
        dvals.append(dv)
        fvals.append(fv)
        if fv > 0:
            total += 1 if dv > 0 else -1
    sign = prep.problem.sign_factor
    return OracleResult(sign * total, points, dvals, fvals, count, sign)


def lambda_by_points(P: StiefelProblem, tol: float = DEFAULT_TOL, **kwargs) -> int:
    """(-1)^(k-1) * sum of sgn delta(p) over real p in V(I) with f(p) > 0."""
    return oracle_lambda(P, tol, **kwargs).value


def charpoly(M: RationalMatrix) -> list:
    """Characteristic polynomial det(tI - M) by Faddeev-LeVerrier; coefficients low degree first."""
    n = M.dim
    A = [[Fraction(c) for c in r] for r in M.rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A @ Mk + c_{n-k+1} I
        prod = [[sum(A[i][l] * Mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        Mk = prod
        AM_trace = sum(sum(A[i][l] * Mk[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -AM_trace / k
    return coeffs


def _sign_changes(seq) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_inertia(M) -> tuple[int, int, int]:
    """(positives, negatives, zeros) of a symmetric matrix from its characteristic polynomial.

    Every root is real, so Descartes' rule of signs is exact here.
    """
    if not isinstance(M, RationalMatrix):
        M = RationalMatrix(M)
    c = charpoly(M)
    zeros = next(i for i, v in enumerate(c) if v)
    pos = _sign_changes(c)
    neg = _sign_changes([v if i % 2 == 0 else -v for i, v in enumerate(c)])
    return pos, neg, zeros
