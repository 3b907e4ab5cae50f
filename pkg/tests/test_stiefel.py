import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stiefeldeg.errors import DegenerateForm, NotZeroDimensional, PivotMinorDegenerate, ValidationError
from stiefeldeg.polycore import LEX, PolyMatrix
from stiefeldeg.polyparse import parse_poly
from stiefeldeg.stiefel import (
    RetryPolicy,
    StiefelProblem,
    compute_lambda,
    delta_polynomials,
    jacobian_delta,
    minors_ideal,
    pivot_minor,
    random_row_transform,
    rank_stratum_diagnostic,
    regularity_diagnostic,
    verify_hypotheses,
)
from examples_data import RING, frame_matrix, frame_problem
from instances import random_instances

x, y, z = RING.gens()
Q = Fraction


def test_example_pipeline_exact():
    t0 = time.perf_counter()
    rep = compute_lambda(frame_problem())
    assert time.perf_counter() - t0 < 1.0
    assert set(rep.gb.generators) == {z**2 + z, y - Q(1, 2) * z, x - z - Q(1, 2)}
    assert rep.algebra_dim == 2 and rep.basis == ((0, 0, 0), (0, 0, 1))
    assert rep.pivot == y + 2
    assert rep.delta_residue == -24 - Q(75, 2) * z
    assert rep.theta_delta.matrix.tolist() == [[Q(-21, 2), Q(-27, 2)], [Q(-27, 2), Q(27, 2)]]
    assert rep.theta_f_delta.matrix.tolist() == [[Q(-99, 4), Q(27, 4)], [Q(27, 4), Q(-27, 4)]]
    assert (rep.signature_delta, rep.signature_f_delta) == (0, -2)
    assert rep.sign_factor == -1
    assert rep.lambda_value == 1
    assert rep.hypotheses.all_passed and rep.hypotheses.randomization_applied is None


def test_lex_order_gives_same_lambda():
    assert compute_lambda(frame_problem(), order=LEX).lambda_value == 1


def test_frame_polynomials():
    A = frame_matrix()
    assert len(minors_ideal(A)) == 6
    assert pivot_minor(A) == y + 2
    deltas = delta_polynomials(A)
    assert len(deltas) == 3  # i = k..n
    assert deltas[0] == (2 * z + 2) * (2 * y + 1) - (y + 2) * (2 * y + 1)
    d = jacobian_delta(deltas)
    assert d.total_degree() <= 3
    with pytest.raises(ValueError):
        jacobian_delta(deltas[1:])


@pytest.mark.parametrize(
    "rows, nvars, match",
    [
        ([["1"], ["0"], ["0"]], 3, "k >= 2"),
        ([["1", "0"], ["0", "1"]], 1, "n-k"),
        ([["1", "0"], ["0", "1"], ["0", "0"]], 2, "even"),
        ([["1", "0"], ["0", "1"], ["0", "0"], ["0", "0"]], 2, "variables"),
    ],
)
def test_validation(rows, nvars, match):
    from stiefeldeg.polycore import Ring

    R = Ring(["x", "y", "z"][:nvars])
    A = PolyMatrix([[parse_poly(e, R) for e in r] for r in rows], R)
    with pytest.raises(ValidationError, match=match):
        StiefelProblem(A, R.one())


def test_zero_f_rejected():
    with pytest.raises(ValidationError):
        StiefelProblem(frame_matrix(), RING.zero())


def test_zero_column_not_zero_dimensional():
    A = PolyMatrix([[r[0], RING.zero()] for r in frame_matrix().entries], RING)
    with pytest.raises(NotZeroDimensional) as info:
        compute_lambda(StiefelProblem(A, parse_poly("1-x^2-y^2-z^2", RING)))
    assert info.value.report.failure.startswith("NotZeroDimensional")


def test_positive_dimensional_minors():
    A = PolyMatrix([[x, RING.zero()], [RING.zero(), x], [RING.zero()] * 2, [RING.zero()] * 2], RING)
    with pytest.raises(NotZeroDimensional):
        verify_hypotheses(StiefelProblem(A, RING.one() - x * x))


def _scrambled():
    A = frame_matrix()
    rows = [list(r) for r in A.entries]
    rows[0] = [a - b for a, b in zip(rows[0], rows[2])]
    return StiefelProblem(PolyMatrix(rows, RING), parse_poly("1-x^2-y^2-z^2", RING))


def test_pivot_repair():
    P = _scrambled()
    assert pivot_minor(P.A).is_zero()
    with pytest.raises(PivotMinorDegenerate) as info:
        compute_lambda(P, RetryPolicy(retries=0))
    assert info.value.report.pivot_minor_invertible is False
    rep = compute_lambda(P, RetryPolicy(retries=8, seed=1))
    assert rep.lambda_value == 1
    rt = rep.hypotheses.randomization_applied
    assert rt is not None and rt.seed == 1 and rt.attempt >= 1
    assert rep.problem.A == P.A.left_multiply(rt.matrix)


def test_degenerate_form_when_f_vanishes_on_V():
    # (1/2, 0, 0) lies in V(I) and on this sphere
    P = frame_problem("1/4 - x^2 - y^2 - z^2")
    with pytest.raises(DegenerateForm) as info:
        compute_lambda(P)
    assert info.value.form_label == "theta_f_delta"
    report, _ = verify_hypotheses(P)
    assert report.theta_f_delta_nondegenerate is False and not report.all_passed


def test_constant_frame_is_zero():
    one, zero = RING.one(), RING.zero()
    A = PolyMatrix([[one, zero], [zero, one], [zero, zero], [zero, zero]], RING)
    rep = compute_lambda(StiefelProblem(A, parse_poly("1-x^2-y^2-z^2", RING)))
    assert rep.lambda_value == 0 and rep.algebra_dim == 0


def test_row_transform_has_det_one():
    from stiefeldeg.polycore import RationalMatrix

    rng = random.Random(5)
    for n in range(2, 7):
        assert RationalMatrix(random_row_transform(n, rng)).determinant() == 1


@given(st.integers(0, 10_000))
@settings(max_examples=12, deadline=None)
def test_row_transform_invariance_on_example(seed):
    Qm = random_row_transform(4, random.Random(seed))
    P = frame_problem()
    moved = StiefelProblem(P.A.left_multiply(Qm), P.f)
    try:
        rep = compute_lambda(moved)
    except (PivotMinorDegenerate, DegenerateForm):
        return
    assert rep.lambda_value == 1


def test_invariance_on_random_instances():
    checked = 0
    rng = random.Random(11)
    for P in random_instances(101, 16):
        try:
            base = compute_lambda(P).lambda_value
        except (PivotMinorDegenerate, DegenerateForm):
            continue
        n = P.n
        # positive row scaling and a det +1 transform are both in the identity component of GL
        D = [[(3 if i == j == 0 else (1 if i == j else 0)) for j in range(n)] for i in range(n)]
        for M in (D, random_row_transform(n, rng)):
            try:
                assert compute_lambda(StiefelProblem(P.A.left_multiply(M), P.f)).lambda_value == base
            except (PivotMinorDegenerate, DegenerateForm):
                pass
        assert compute_lambda(StiefelProblem(P.A, P.f.scale(Fraction(7, 3)))).lambda_value == base
        checked += 1
    assert checked >= 10


def test_regularity_and_rank_diagnostics():
    d = regularity_diagnostic(parse_poly("1-x^2-y^2-z^2", RING))
    assert d["zero_dimensional"] and d["passed"] is True
    cone = regularity_diagnostic(parse_poly("x^2-y^2-z^2", RING))
    assert cone["passed"] is False
    r = rank_stratum_diagnostic(frame_matrix())
    assert r["passed"] is True
