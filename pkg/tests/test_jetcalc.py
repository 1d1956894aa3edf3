import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from jetvar.errors import JetError, WorldMismatchError
from jetvar.expr import HorizontalForm, InteriorJetVar, JetSpace, MultiIndex, World, parse
from jetvar.jetcalc import (
    evolutionary,
    horizontal_differential,
    jet_variable,
    linearization,
    prolong,
    total_derivative,
    total_derivative_multi,
)
from jetvar.operators import GeneratingSection
from tests.strategies import polynomials, sections

PLANE = JetSpace(2, 1)


def test_total_derivative_examples(P):
    assert total_derivative(P("u1"), 1) == P("u1_{1,0}")
    assert total_derivative(P("x1*u1"), 1) == P("u1 + x1*u1_{1,0}")
    assert total_derivative(P("x1*u1"), 2) == P("x1*u1_{0,1}")
    assert total_derivative(P("sin(u1_{1,0})"), 2) == P("cos(u1_{1,0})*u1_{1,1}")


def test_total_derivative_of_constant_is_zero(P):
    assert total_derivative(P("7/3"), 1).is_zero


def test_total_derivative_multi(P):
    assert total_derivative_multi(P("u1"), MultiIndex((2, 1))) == P("u1_{2,1}")
    assert total_derivative_multi(P("u1"), MultiIndex((0, 0))) == P("u1")


def test_total_derivative_rejects_bad_input(P):
    with pytest.raises(JetError):
        total_derivative(P("u1"), 3)
    with pytest.raises(JetError):
        total_derivative_multi(P("u1"), MultiIndex((1,)))
    with pytest.raises(WorldMismatchError):
        total_derivative(parse("ub1_0_{0}", PLANE, World.BOUNDARY), 1)


@given(st.data())
def test_total_derivatives_commute(data):
    f = data.draw(polynomials(PLANE))
    assert total_derivative(total_derivative(f, 1), 2) == total_derivative(total_derivative(f, 2), 1)


@given(st.data())
def test_total_derivative_leibniz(data):
    f = data.draw(polynomials(PLANE))
    g = data.draw(polynomials(PLANE))
    i = data.draw(st.integers(1, 2))
    assert total_derivative(f * g, i) == total_derivative(f, i) * g + f * total_derivative(g, i)


def test_linearization_dirichlet(P):
    op = linearization(P("1/2*u1_{1,0}^2 + 1/2*u1_{0,1}^2"))
    assert op.coefficient(1, MultiIndex((1, 0))) == P("u1_{1,0}")
    assert op.coefficient(1, MultiIndex((0, 1))) == P("u1_{0,1}")
    assert len(op) == 2


def test_linearization_of_jet_free_is_zero(P):
    assert linearization(P("x1^2 + sin(x2)")).is_zero


@given(st.data())
def test_linearization_leibniz(data):
    f = data.draw(polynomials(PLANE))
    g = data.draw(polynomials(PLANE))
    assert linearization(f * g) == linearization(g).scaled(f) + linearization(f).scaled(g)


def test_evolutionary_example(P):
    chi = GeneratingSection((P("x1*u1"),))
    # D_1(x1*u1) * 2*u1_{1,0}
    assert evolutionary(chi, P("u1_{1,0}^2")) == P("2*u1_{1,0}*(u1 + x1*u1_{1,0})")


@settings(max_examples=100)
@given(st.data())
def test_evolutionary_commutes_with_total_derivatives(data):
    f = data.draw(polynomials(PLANE))
    psi = data.draw(sections(PLANE))
    i = data.draw(st.integers(1, 2))
    assert evolutionary(psi, total_derivative(f, i)) == total_derivative(evolutionary(psi, f), i)


def test_horizontal_differential_of_function(P):
    f = P("x1*u1")
    df = horizontal_differential(HorizontalForm.function(f))
    assert df.coefficient((1,)) == total_derivative(f, 1)
    assert df.coefficient((2,)) == total_derivative(f, 2)


def test_horizontal_differential_of_one_form(P):
    a, b = P("u1_{0,1}"), P("u1_{1,0}")
    omega = HorizontalForm(1, PLANE, World.INTERIOR, {(1,): a, (2,): b})
    # D_1 b - D_2 a = u1_{2,0} - u1_{0,2}
    assert horizontal_differential(omega).coefficient((1, 2)) == P("u1_{2,0} - u1_{0,2}")


def test_horizontal_differential_top_degree(P):
    top = HorizontalForm(2, PLANE, World.INTERIOR, {(1, 2): P("u1")})
    assert horizontal_differential(top).is_zero


@settings(max_examples=100)
@given(st.data())
def test_horizontal_differential_squares_to_zero(data):
    f = data.draw(polynomials(PLANE))
    g = data.draw(polynomials(PLANE))
    d = horizontal_differential
    assert d(d(HorizontalForm.function(f))).is_zero
    one_form = HorizontalForm(1, PLANE, World.INTERIOR, {(1,): f, (2,): g})
    assert d(d(one_form)).is_zero


def test_horizontal_differential_on_boundary():
    space = JetSpace(3, 1)
    g = parse("x1*ub1_0_{0,0}", space, World.BOUNDARY)
    dg = horizontal_differential(HorizontalForm.function(g))
    assert dg.world is World.BOUNDARY
    assert dg.coefficient((1,)) == parse("ub1_0_{0,0} + x1*ub1_0_{1,0}", space, World.BOUNDARY)
    assert horizontal_differential(dg).is_zero


def test_prolong_along_section(P):
    assert prolong(P("u1_{1,0}^2"), [P("x1^2")]) == P("4*x1^2")
    assert prolong(P("u1_{1,1} + u1"), [P("x1*x2")]) == P("1 + x1*x2")
    with pytest.raises(JetError):
        prolong(P("u1"), [P("u1_{1,0}")])


def test_jet_variable_helper(P):
    assert jet_variable(PLANE, 1, 2, 0) == P("u1_{2,0}")
    assert jet_variable(PLANE, 1).atoms() == {InteriorJetVar(1, MultiIndex((0, 0)))}
