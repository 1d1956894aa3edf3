# tests/strategies.py
import hypothesis.strategies as st

import sympy as sp

from jetvar.expr import BaseCoord, BoundaryJetVar, Expr, InteriorJetVar, JetSpace, MultiIndex, World
from jetvar.expr.atoms import Cos, Exp, Log, Sin, Sqrt, Tan
from jetvar.operators import BoundaryGeneratingSection, CDiffOp, GeneratingSection

BOUNDED_CALLS = (Sin, Cos, Sqrt, Log)
ALL_CALLS = BOUNDED_CALLS + (Tan, Exp)

spaces = st.builds(JetSpace, st.integers(1, 2), st.integers(1, 2))


def multi_indices(width, max_order):
    return st.lists(st.integers(0, max_order), min_size=width, max_size=width).map(tuple).filter(
        lambda s: sum(s) <= max_order
    ).map(MultiIndex)


def _interior_generators(space, max_order):
    coords = st.integers(1, space.n).map(lambda i: BaseCoord(i).symbol)
    jets = st.builds(
        lambda k, sigma: InteriorJetVar(k, sigma).symbol,
        st.integers(1, space.m),
        multi_indices(space.n, max_order),
    )
    return st.one_of(coords, jets, jets)


def _boundary_generators(space, max_order):
    jets = st.builds(
        lambda k, i, tau: BoundaryJetVar(k, i, tau).symbol,
        st.integers(1, space.m),
        st.integers(0, max_order),
        multi_indices(space.n - 1, max_order),
    )
    if space.n == 1:
        return jets
    coords = st.integers(1, space.n - 1).map(lambda j: BaseCoord(j).symbol)
    return st.one_of(coords, jets, jets)


@st.composite
def polynomials(draw, space, max_order=2, world=World.INTERIOR, max_terms=3, max_degree=3):
    """Random polynomial Expr over the given jet space."""
    gens = (_interior_generators if world is World.INTERIOR else _boundary_generators)(space, max_order)
    total = 0
    for _ in range(draw(st.integers(1, max_terms))):
        term = draw(st.integers(-3, 3))
        for g in draw(st.lists(gens, max_size=max_degree)):
            term = term * g
        total = total + term
    return Expr.normalize(total, space, world)


@st.composite
def sections(draw, space, max_order=1):
    return GeneratingSection(tuple(draw(polynomials(space, max_order)) for _ in range(space.m)))


@st.composite
def operators(draw, space, max_order=3):
    coefficients = {}
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(1, space.m))
        sigma = draw(multi_indices(space.n, max_order))
        coefficients[(k, sigma)] = draw(polynomials(space, 1))
    return CDiffOp(space, coefficients)


@st.composite
def boundary_sections(draw, space, max_order=1):
    components = {}
    for _ in range(draw(st.integers(1, 3))):
        key = (draw(st.integers(1, space.m)), draw(st.integers(0, 2)))
        components[key] = draw(polynomials(space, max_order, World.BOUNDARY))
    return BoundaryGeneratingSection(space, components)


def _monomials(space, max_order):
    """Non-constant monomials with a non-zero coefficient."""
    gens = _interior_generators(space, max_order)
    return st.builds(
        lambda c, factors: c * sp.Mul(*factors),
        st.sampled_from([-2, -1, 1, 2]),
        st.lists(gens, min_size=1, max_size=2),
    )


def raw_trees(space, max_order=1, calls=BOUNDED_CALLS):
    """
    Un-normalized sympy trees with sums, products, quotients and nested calls.

    Denominators have the form 1 + t^2 and call arguments the form
    1 + m^2 (1 + t^2) with m a monomial, so both stay away from zero.
    """
    monomials = _monomials(space, max_order)

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda ab: ab[0] + ab[1]),
            st.tuples(children, children).map(lambda ab: ab[0] * ab[1]),
            st.tuples(children, children).map(lambda ab: ab[0] / (1 + ab[1] ** 2)),
            st.builds(
                lambda fn, m, t: fn(1 + m**2 * (1 + t**2)), st.sampled_from(calls), monomials, children
            ),
        )

    return st.recursive(monomials, extend, max_leaves=5)
