"""
The boundary x_n = 0 as a jet space of its own.

Boundary jet coordinates (u_i^k)_tau record i normal and tau tangential
derivatives. The embedding acts on coordinates by

    x_j -> x_j (j < n),   x_n -> 0,   u^k_sigma -> (u^k_{sigma_n})_{sigma - sigma_n 1_n}.
"""

from __future__ import annotations

import logging
from typing import Dict, Sequence

import sympy as sp

from jetvar.errors import JetError
from jetvar.expr import (
    BaseCoord,
    BoundaryJetVar,
    Expr,
    HorizontalForm,
    InteriorJetVar,
    MultiIndex,
    World,
    ensure_world,
    partial,
)
from jetvar.operators import (
    BoundaryCDiffOp,
    BoundaryGeneratingSection,
    BoundaryOpKey,
    CDiffOp,
    OpKey,
    SectionKey,
    accumulate,
)

logger = logging.getLogger(__name__)


# ---------- pullback and its section ----------


def restrict_atom(atom: InteriorJetVar) -> BoundaryJetVar:
    tau, i = atom.sigma.split_normal()
    return BoundaryJetVar(atom.k, i, tau)


def lift_atom(atom: BoundaryJetVar) -> InteriorJetVar:
    return InteriorJetVar(atom.k, atom.tau.with_normal(atom.i))


def pullback(f: Expr) -> Expr:
    """Atomwise substitution by the embedding table, then normalize in the boundary world."""
    ensure_world(f, World.INTERIOR)
    n = f.space.n
    substitution = {BaseCoord(n).symbol: sp.Integer(0)}
    for atom in f.jet_atoms():
        substitution[atom.symbol] = restrict_atom(atom).symbol
    return Expr.normalize(f.value.xreplace(substitution), f.space, World.BOUNDARY)


def lift(g: Expr) -> Expr:
    """Atomwise section of the pullback: (u_i^k)_tau -> u^k_{(tau, i)}, x_j -> x_j."""
    ensure_world(g, World.BOUNDARY)
    substitution = {atom.symbol: lift_atom(atom).symbol for atom in g.jet_atoms()}
    return Expr.normalize(g.value.xreplace(substitution), g.space, World.INTERIOR)


def pullback_form(omega: HorizontalForm) -> HorizontalForm:
    """
    Drop every basis subset containing n and pull back the rest.
    A degree-n form has no boundary counterpart and maps to the zero (n-1)-form.
    """
    if omega.world is not World.INTERIOR:
        raise JetError("pullback_form expects an interior form")
    space, n = omega.space, omega.space.n
    if omega.degree == n:
        return HorizontalForm.zero(n - 1, space, World.BOUNDARY)
    out = {
        subset: pullback(c) for subset, c in omega.coefficients.items() if n not in subset
    }
    return HorizontalForm(omega.degree, space, World.BOUNDARY, out)


def is_relative(omega: HorizontalForm) -> bool:
    """Membership in the ideal of horizontal forms vanishing on the boundary (kernel of the pullback)."""
    return pullback_form(omega).is_zero


# ---------- boundary total derivatives ----------


def _check_tangential(j: int, space) -> None:
    if not 1 <= j <= space.n - 1:
        raise JetError(f"Boundary total derivative direction {j} out of range 1..{space.n - 1}")


def boundary_total_derivative(g: Expr, j: int) -> Expr:
    """D_j g = dg/dx_j + sum (u_i^k)_{tau+1_j} dg/d(u_i^k)_tau."""
    ensure_world(g, World.BOUNDARY)
    _check_tangential(j, g.space)
    value = g.value
    result = sp.diff(value, BaseCoord(j).symbol)
    for atom in g.jet_atoms():
        result += atom.shifted(j).symbol * sp.diff(value, atom.symbol)
    return g.with_value(result)


def boundary_total_derivative_multi(g: Expr, tau: MultiIndex) -> Expr:
    ensure_world(g, World.BOUNDARY)
    if tau.width != g.space.n - 1:
        raise JetError(f"Boundary multi-index {tau} has width {tau.width}, expected {g.space.n - 1}")
    for j in tau.steps():
        g = boundary_total_derivative(g, j)
    return g


# ---------- boundary linearization and evolutionary derivations ----------


def boundary_linearization(g: Expr) -> BoundaryCDiffOp:
    ensure_world(g, World.BOUNDARY)
    coefficients: Dict[BoundaryOpKey, Expr] = {}
    for atom in g.jet_atoms():
        coefficients[(atom.k, atom.i, atom.tau)] = partial(g, atom)
    return BoundaryCDiffOp(g.space, coefficients)


def boundary_apply(op: BoundaryCDiffOp, psi: BoundaryGeneratingSection) -> Expr:
    """sum b_{k,i,tau} D_tau(psi_i^k)."""
    if psi.space != op.space:
        raise JetError(f"Boundary section over {psi.space} does not match operator over {op.space}")
    total = Expr.constant(0, op.space, World.BOUNDARY)
    for (k, i, tau), b in op.items():
        total = total + b * boundary_total_derivative_multi(psi.get(k, i), tau)
    return total


def boundary_evolutionary(psi: BoundaryGeneratingSection, g: Expr) -> Expr:
    """sum D_tau(psi_i^k) dg/d(u_i^k)_tau."""
    ensure_world(g, World.BOUNDARY)
    if psi.space != g.space:
        raise JetError(f"Boundary section over {psi.space} does not match {g.space}")
    total = g.zero()
    for atom in g.jet_atoms():
        total = total + boundary_total_derivative_multi(psi.get(atom.k, atom.i), atom.tau) * partial(
            g, atom
        )
    return total


# ---------- restriction of operators ----------


def restrict_operator(op: CDiffOp) -> BoundaryCDiffOp:
    """a_{k,sigma} D_sigma -> pullback(a_{k,sigma}) D_tau^(k, sigma_n), tau = sigma without its last entry."""
    out: Dict[BoundaryOpKey, Expr] = {}
    for (k, sigma), a in op.items():
        tau, i = sigma.split_normal()
        accumulate(out, (k, i, tau), pullback(a))
    return BoundaryCDiffOp(op.space, out)


def lift_operator(op: BoundaryCDiffOp) -> CDiffOp:
    """Canonical preimage of restrict_operator: D_tau^(k,i) -> D_(tau,i), coefficients lifted atomwise."""
    out: Dict[OpKey, Expr] = {}
    for (k, i, tau), b in op.items():
        accumulate(out, (k, tau.with_normal(i)), lift(b))
    return CDiffOp(op.space, out)


def boundary_adjoint_value(op: BoundaryCDiffOp) -> Dict[SectionKey, Expr]:
    """(k, i) -> sum_tau (-1)^|tau| D_tau(b_{k,i,tau}); zero entries are omitted."""
    out: Dict[SectionKey, Expr] = {}
    for (k, i, tau), b in op.items():
        term = boundary_total_derivative_multi(b, tau)
        accumulate(out, (k, i), -term if tau.order % 2 else term)
    return dict(sorted(out.items()))


def boundary_euler(g: Expr) -> Dict[SectionKey, Expr]:
    """Euler operator of the boundary jet space applied to the density g."""
    return boundary_adjoint_value(boundary_linearization(g))


# ---------- concrete sections ----------


def prolong_boundary(g: Expr, section: Sequence[Expr]) -> Expr:
    """
    Evaluate g along the boundary restriction of u^k = s^k(x):
    (u_i^k)_tau -> (d^tau d_n^i s^k)|_{x_n = 0}.
    """
    ensure_world(g, World.BOUNDARY)
    space = g.space
    if len(section) != space.m:
        raise JetError(f"Section has {len(section)} components, expected m={space.m}")
    for s in section:
        ensure_world(s, World.INTERIOR, "section component")
        if s.jet_atoms():
            raise JetError(f"Section component {s} must not contain jet variables")
    xs = [BaseCoord(j).symbol for j in range(1, space.n + 1)]
    substitution = {}
    for atom in g.jet_atoms():
        orders = atom.tau.with_normal(atom.i)
        spec = [a for pair in zip(xs, orders) for a in pair]
        substitution[atom.symbol] = sp.diff(section[atom.k - 1].value, *spec).xreplace(
            {xs[-1]: sp.Integer(0)}
        )
    logger.debug("prolong_boundary: substituting %d boundary atoms", len(substitution))
    return Expr.normalize(g.value.xreplace(substitution), space, World.BOUNDARY)
