"""
Interior jet calculus: total derivatives, horizontal differential,
universal linearization and evolutionary derivations.
"""

from __future__ import annotations

import logging
from typing import Dict, Sequence

import sympy as sp

from jetvar.errors import JetError
from jetvar.expr import (
    BaseCoord,
    Expr,
    HorizontalForm,
    InteriorJetVar,
    MultiIndex,
    World,
    ensure_world,
    partial,
)
from jetvar.operators import CDiffOp, GeneratingSection, OpKey

logger = logging.getLogger(__name__)


def _check_direction(i: int, dim: int) -> None:
    if not 1 <= i <= dim:
        raise JetError(f"Total derivative direction {i} out of range 1..{dim}")


def total_derivative(f: Expr, i: int) -> Expr:
    """D_i f = df/dx_i + sum over the jet atoms of f of u^k_{sigma+1_i} df/du^k_sigma."""
    ensure_world(f, World.INTERIOR)
    _check_direction(i, f.space.n)
    value = f.value
    result = sp.diff(value, BaseCoord(i).symbol)
    for atom in f.jet_atoms():
        result += atom.shifted(i).symbol * sp.diff(value, atom.symbol)
    return f.with_value(result)


def total_derivative_multi(f: Expr, sigma: MultiIndex) -> Expr:
    ensure_world(f, World.INTERIOR)
    if sigma.width != f.space.n:
        raise JetError(f"Multi-index {sigma} has width {sigma.width}, expected {f.space.n}")
    for i in sigma.steps():
        f = total_derivative(f, i)
    return f


def linearization(f: Expr) -> CDiffOp:
    """l_f = sum df/du^k_sigma D_sigma o Pi^(k)."""
    ensure_world(f, World.INTERIOR)
    coefficients: Dict[OpKey, Expr] = {}
    for atom in f.jet_atoms():
        coefficients[(atom.k, atom.sigma)] = partial(f, atom)
    return CDiffOp(f.space, coefficients)


def evolutionary(psi: GeneratingSection, f: Expr) -> Expr:
    """Evolutionary derivation with generating section psi applied to f."""
    ensure_world(f, World.INTERIOR)
    if psi.space != f.space:
        raise JetError(f"Section has {len(psi)} components over {psi.space}, expected {f.space}")
    total = f.zero()
    for atom in f.jet_atoms():
        total = total + total_derivative_multi(psi[atom.k], atom.sigma) * partial(f, atom)
    return total


def horizontal_differential(omega: HorizontalForm) -> HorizontalForm:
    """
    d-bar on horizontal forms of either world.

    The coefficient on J is sum_{i in J} (-1)^pos(i, J) D_i(c_{J minus i}).
    A top-degree form is mapped to the zero form of the same degree.
    """
    dim = omega.dimension
    if omega.degree >= dim:
        return HorizontalForm.zero(dim, omega.space, omega.world)
    if omega.world is World.INTERIOR:
        D = total_derivative
    else:
        from jetvar.boundary import boundary_total_derivative as D

    out: Dict[tuple, Expr] = {}
    zero = Expr.constant(0, omega.space, omega.world)
    for subset in HorizontalForm.zero(omega.degree + 1, omega.space, omega.world).basis():
        coeff = zero
        for pos, i in enumerate(subset):
            rest = subset[:pos] + subset[pos + 1 :]
            c = omega.coefficients.get(rest)
            if c is None:
                continue
            term = D(c, i)
            coeff = coeff - term if pos % 2 else coeff + term
        out[subset] = coeff
    return HorizontalForm(omega.degree + 1, omega.space, omega.world, out)


def prolong(f: Expr, section: Sequence[Expr]) -> Expr:
    """
    Evaluate f along the infinite prolongation of u^k = s^k(x).

    Every s^k must be an interior expression in base coordinates only.
    """
    ensure_world(f, World.INTERIOR)
    if len(section) != f.space.m:
        raise JetError(f"Section has {len(section)} components, expected m={f.space.m}")
    for s in section:
        ensure_world(s, World.INTERIOR, "section component")
        if s.jet_atoms():
            raise JetError(f"Section component {s} must not contain jet variables")
    xs = [BaseCoord(i).symbol for i in range(1, f.space.n + 1)]
    substitution = {}
    for atom in f.jet_atoms():
        spec = [a for pair in zip(xs, atom.sigma) for a in pair]
        substitution[atom.symbol] = sp.diff(section[atom.k - 1].value, *spec)
    logger.debug("prolong: substituting %d jet atoms", len(substitution))
    return f.with_value(f.value.xreplace(substitution))


def jet_variable(space, k: int, *sigma: int) -> Expr:
    """Convenience constructor for u^k_sigma as an Expr."""
    index = MultiIndex(sigma) if sigma else MultiIndex.zero(space.n)
    return Expr.from_atom(InteriorJetVar(k, index), space)
