"""Whitney intersection number of a polynomial immersion M -> R^{2m}, M = f^{-1}(0) in R^{m+1}.

The Jacobian of (f, g_1, ..., g_2m) is a (2m+1) x (m+1) frame alpha with
I(g) = -Lambda(alpha), where M carries the orientation in which
(grad f, v_1, ..., v_m) is positively oriented.  grad f points into
D = {f >= 0}, so this is the reverse of the boundary orientation of D used by
``compute_lambda``; the two Lambdas differ by a sign and I(g) equals the
``compute_lambda`` value of the Jacobian frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .groebner import DEFAULT_MAX_REDUCTIONS
from .polycore import GREVLEX, MonomialOrder, PolyMatrix, Polynomial
from .stiefel import LambdaReport, RetryPolicy, StiefelProblem, compute_lambda

__all__ = ["ImmersionProblem", "IntersectionResult", "build_alpha", "intersection_number"]


@dataclass(frozen=True)
class ImmersionProblem:
    f: Polynomial
    G: tuple

    def __post_init__(self):
        object.__setattr__(self, "G", tuple(self.G))
        ring = self.f.ring
        m = ring.nvars - 1
        if m < 2 or m % 2:
            raise ValidationError(f"need m even and m >= 2 (m = number of variables - 1 = {m})")
        if len(self.G) != 2 * m:
            raise ValidationError(f"G must have 2m = {2 * m} components, got {len(self.G)}")
        if any(g.ring != ring for g in self.G):
            raise ValidationError("f and all components of G must share one ring")
        if self.f.is_zero():
            raise ValidationError("hypersurface polynomial f must be nonzero")

    @property
    def m(self) -> int:
        return self.f.ring.nvars - 1


def build_alpha(P: ImmersionProblem) -> StiefelProblem:
    """Stiefel problem whose frame is the Jacobian matrix of (f, g_1, ..., g_2m)."""
    ring = P.f.ring
    rows = [[h.diff(j) for j in range(ring.nvars)] for h in (P.f,) + P.G]
    return StiefelProblem(PolyMatrix(rows, ring), P.f)


@dataclass
class IntersectionResult:
    value: int
    lambda_report: LambdaReport
    problem: StiefelProblem

    @property
    def lambda_gradient_oriented(self) -> int:
        """Lambda(alpha|M) with M oriented by grad f first."""
        return -self.lambda_report.lambda_value

    def __int__(self):
        return self.value


def intersection_number(
    P: ImmersionProblem,
    policy: RetryPolicy = RetryPolicy(),
    order: MonomialOrder = GREVLEX,
    max_reductions: int = DEFAULT_MAX_REDUCTIONS,
) -> IntersectionResult:
    """I(g) = -Lambda(alpha) for the grad-f orientation of M.

    A DegenerateForm error means the immersion property is uncertified.
    """
    S = build_alpha(P)
    rep = compute_lambda(S, policy, order, max_reductions)
    lambda_grad = -rep.lambda_value
    return IntersectionResult(-lambda_grad, rep, S)


def immersion_from_strings(variables: Sequence[str], f: str, G: Sequence[str]) -> ImmersionProblem:
    from .polyparse import parse_poly
    from .polycore import Ring

    ring = Ring(variables)
    return ImmersionProblem(parse_poly(f, ring), tuple(parse_poly(g, ring) for g in G))
