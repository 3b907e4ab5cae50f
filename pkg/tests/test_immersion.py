import pytest

from stiefeldeg.errors import ValidationError
from stiefeldeg.immersion import ImmersionProblem, build_alpha, immersion_from_strings, intersection_number
from stiefeldeg.polycore import Ring
from examples_data import immersion_problem


@pytest.fixture(scope="module")
def example_result():
    return intersection_number(immersion_problem())


def test_example_value(example_result):
    assert example_result.value == 5
    assert int(example_result) == 5
    assert example_result.lambda_gradient_oriented == -5
    rep = example_result.lambda_report
    assert rep.k == 3 and rep.sign_factor == 1
    assert rep.algebra_dim == 21
    assert (rep.signature_delta, rep.signature_f_delta) == (5, 5)


def test_build_alpha_is_jacobian():
    P = immersion_problem()
    S = build_alpha(P)
    assert S.A.shape == (5, 3)
    x1, x2, x3 = P.f.ring.gens()
    assert S.A.row(0) == (-2 * x1, -2 * x2, -2 * x3)
    assert S.A.row(3) == (x2 + 2, x1, P.f.ring.zero())
    assert S.f == P.f


def test_embedding_has_no_double_points():
    P = immersion_from_strings(["x1", "x2", "x3"], "1 - x1^2 - x2^2 - x3^2", ["x1", "x2", "x3", "0"])
    assert intersection_number(P).value == 0


@pytest.mark.parametrize(
    "variables, G, match",
    [
        (["a", "b", "c", "d"], ["a", "b", "c", "d", "0", "0"], "m even"),
        (["a", "b"], ["a", "b"], "m even"),
        (["a", "b", "c"], ["a", "b", "c"], "2m = 4"),
    ],
)
def test_validation(variables, G, match):
    with pytest.raises(ValidationError, match=match):
        immersion_from_strings(variables, "1 - a^2", G)


def test_zero_f_and_ring_mismatch():
    R = Ring(["a", "b", "c"])
    a, b, c = R.gens()
    with pytest.raises(ValidationError):
        ImmersionProblem(R.zero(), (a, b, c, a))
    other = Ring(["p", "q", "r"])
    with pytest.raises(ValidationError):
        ImmersionProblem(R.one() - a * a, (a, b, c, other.gen(0)))
