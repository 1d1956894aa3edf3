"""
Euler operator and relative Euler operator.

A Lagrangian is a density f (the n-form f dx_1^...^dx_n). The relative Euler
operator returns the Euler-Lagrange expressions el = l_f*(1) and the
transversality conditions theta on x_n = 0:

    (h, eta) = green_decompose(l_f),  theta = boundary_adjoint_value(restrict_operator(eta_n)).

The extremality condition for the free-boundary problem is el = 0 and theta = 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from jetvar import config
from jetvar.boundary import boundary_adjoint_value, prolong_boundary, restrict_operator
from jetvar.cdiff import GreenDecomposition, PeelStrategy, adjoint_value, apply, green_decompose
from jetvar.errors import EvaluationError, JetError
from jetvar.expr import Atom, Expr, World, ensure_world, evaluate
from jetvar.jetcalc import evolutionary, linearization, prolong, total_derivative
from jetvar.operators import GeneratingSection, SectionKey, accumulate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelativeEulerResult:
    el: Tuple[Expr, ...]
    theta: Mapping[SectionKey, Expr]
    green: Optional[GreenDecomposition] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "el", tuple(self.el))
        object.__setattr__(
            self, "theta", {key: v for key, v in sorted(self.theta.items()) if not v.is_zero}
        )

    def __hash__(self) -> int:
        return hash((self.el, tuple(self.theta.items())))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.el) and not self.theta

    def scaled(self, c: Union[int, Fraction]) -> RelativeEulerResult:
        return RelativeEulerResult(
            tuple(e * c for e in self.el), {key: v * c for key, v in self.theta.items()}
        )

    def __add__(self, other: RelativeEulerResult) -> RelativeEulerResult:
        if len(self.el) != len(other.el):
            raise JetError("Cannot add results over different jet spaces")
        theta: Dict[SectionKey, Expr] = dict(self.theta)
        for key, v in other.theta.items():
            accumulate(theta, key, v)
        return RelativeEulerResult(tuple(a + b for a, b in zip(self.el, other.el)), theta)


def normal_order(f: Expr) -> int:
    """Highest number of x_n-derivatives among the jet variables of f (0 if none)."""
    ensure_world(f, World.INTERIOR)
    return max((atom.sigma.split_normal()[1] for atom in f.jet_atoms()), default=0)


def euler(f: Expr) -> Tuple[Expr, ...]:
    """Euler-Lagrange expressions l_f*(1)."""
    ensure_world(f, World.INTERIOR)
    return adjoint_value(linearization(f))


def relative_euler(f: Expr, strategy: PeelStrategy = PeelStrategy.DEFAULT) -> RelativeEulerResult:
    ensure_world(f, World.INTERIOR)
    op = linearization(f)
    green = green_decompose(op, strategy)
    beta = restrict_operator(green.eta(f.space.n))
    theta = boundary_adjoint_value(beta)
    logger.debug(
        "relative_euler: operator with %d terms, %d boundary terms, %d transversality entries",
        len(op),
        len(beta),
        len(theta),
    )
    return RelativeEulerResult(green.adjoint_value, theta, green)


# ---------- first variation ----------


@dataclass(frozen=True)
class FirstVariationReport:
    residuals: Tuple[float, ...]
    passed: bool
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


@dataclass(frozen=True)
class FirstVariation:
    """The two sides of E_chi(f) = <el, chi> + sum_i D_i(eta_i(chi)), kept unsimplified."""

    lhs: Expr
    pieces: Tuple[Expr, ...]

    def atoms(self) -> frozenset:
        out = set(self.lhs.atoms())
        for p in self.pieces:
            out |= p.atoms()
        return frozenset(out)

    def check(
        self, points: Sequence[Mapping[Atom, float]], tolerance: float = config.TOLERANCE
    ) -> FirstVariationReport:
        residuals: List[float] = []
        passed = True
        for idx, point in enumerate(points):
            try:
                lhs = evaluate(self.lhs, point)
                rhs = sum(evaluate(p, point) for p in self.pieces)
            except EvaluationError as exc:
                raise EvaluationError(str(exc), point=idx) from exc
            r = abs(lhs - rhs)
            residuals.append(r)
            if r > tolerance * max(1.0, abs(lhs), abs(rhs)):
                passed = False
        return FirstVariationReport(tuple(residuals), passed, tolerance)


def first_variation(
    f: Expr, chi: GeneratingSection, strategy: PeelStrategy = PeelStrategy.DEFAULT
) -> FirstVariation:
    ensure_world(f, World.INTERIOR)
    green = green_decompose(linearization(f), strategy)
    pieces = [h * c for h, c in zip(green.adjoint_value, chi)]
    for i, eta in enumerate(green.current, start=1):
        if not eta.is_zero:
            pieces.append(total_derivative(apply(eta, chi), i))
    return FirstVariation(evolutionary(chi, f), tuple(pieces))


def check_first_variation(
    f: Expr,
    chi: GeneratingSection,
    points: Sequence[Mapping[Atom, float]],
    strategy: PeelStrategy = PeelStrategy.DEFAULT,
    tolerance: float = config.TOLERANCE,
) -> FirstVariationReport:
    """Numeric witness of the Green decomposition of the first variation at each point."""
    return first_variation(f, chi, strategy).check(points, tolerance)


# ---------- extremality along a concrete section ----------


@dataclass(frozen=True)
class ExtremalityReport:
    el: Tuple[Expr, ...]
    theta: Mapping[SectionKey, Expr]

    @property
    def satisfies_el(self) -> bool:
        return all(e.is_zero for e in self.el)

    @property
    def satisfies_transversality(self) -> bool:
        return all(v.is_zero for v in self.theta.values())

    @property
    def is_extremal(self) -> bool:
        return self.satisfies_el and self.satisfies_transversality


def extremality(f: Expr, section: Sequence[Expr]) -> ExtremalityReport:
    """EL and transversality residuals of f along u^k = s^k(x)."""
    result = relative_euler(f)
    el = tuple(prolong(e, section) for e in result.el)
    theta = {key: prolong_boundary(v, section) for key, v in result.theta.items()}
    return ExtremalityReport(el, theta)
