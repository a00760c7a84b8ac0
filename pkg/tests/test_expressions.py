import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orliczforms.errors import ExpressionError
from orliczforms.expressions import evaluate, free_variables, parse, substitute
from orliczforms.forms import ExprField


def ev(text, **env):
    return evaluate(parse(text), {k: np.asarray(v) for k, v in env.items()})


def test_arithmetic_and_precedence():
    assert ev("1 + 2*3") == pytest.approx(7.0)
    assert ev("(1 + 2)*3") == pytest.approx(9.0)
    assert ev("2^3*4") == pytest.approx(32.0)
    assert ev("-x1^2", x1=3.0) == pytest.approx(-9.0)  # power binds tighter than unary minus
    assert ev("10/4") == pytest.approx(2.5)
    assert ev("2 - 3 - 4") == pytest.approx(-5.0)


def test_functions_and_constants():
    assert ev("sin(pi/2)") == pytest.approx(1.0, abs=1e-15)
    assert ev("cos(0)") == pytest.approx(1.0)
    assert ev("exp(1)") == pytest.approx(np.e)
    assert ev("sqrt(2)^2") == pytest.approx(2.0, rel=1e-15)
    assert ev("abs(-3)") == pytest.approx(3.0)


def test_vectorized_matches_scalar():
    xs = np.linspace(0.0, 1.0, 17)
    ys = np.linspace(-1.0, 2.0, 17)
    batch = ev("sin(pi*x1)*x2 + x1^3", x1=xs, x2=ys)
    singles = [float(ev("sin(pi*x1)*x2 + x1^3", x1=x, x2=y)) for x, y in zip(xs, ys)]
    np.testing.assert_allclose(batch, singles, rtol=1e-15)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5),
       st.floats(-2.0, 2.0))
def test_polynomial_round_trip(coeffs, x):
    # build sum c_k * x1^k textually and compare against numpy's polyval
    text = " + ".join(f"({c})*x1^{k}" for k, c in enumerate(coeffs))
    want = float(np.polynomial.polynomial.polyval(x, np.array(coeffs, dtype=float)))
    got = float(ev(text, x1=x))
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_free_variables():
    assert free_variables(parse("x1*x2 + sin(x3)")) == {"x1", "x2", "x3"}
    assert free_variables(parse("pi + 1")) == set()


def test_substitute_rescales():
    node = substitute(parse("x1^2 + x2"), {"x1": parse("(x1/2)")})
    got = evaluate(node, {"x1": np.array([2.0]), "x2": np.array([3.0])})
    assert got[0] == pytest.approx(4.0)


@pytest.mark.parametrize("bad", [
    "x1 +", "x1 & x2", "sin()", "((x1)", "1..2", "x1 x2", "",
])
def test_malformed_input_rejected(bad):
    with pytest.raises(ExpressionError):
        parse(bad)


def test_unknown_variable_rejected_by_field():
    with pytest.raises(ExpressionError):
        ExprField("x3 + 1", 2)


def test_expr_field_partials():
    f = ExprField("x1^3*x2", 2)
    pts = np.array([[0.5, 2.0], [1.0, 1.0]])
    np.testing.assert_allclose(f.partial(1)(pts), [1.5, 3.0], rtol=1e-14)
    np.testing.assert_allclose(f.partial(2)(pts), [0.125, 1.0], rtol=1e-14)


def test_expr_field_partial_of_functions():
    f = ExprField("sin(pi*x1)", 1)
    pts = np.array([[0.25]])
    assert f.partial(1)(pts)[0] == pytest.approx(np.pi * np.cos(np.pi * 0.25), rel=1e-14)
