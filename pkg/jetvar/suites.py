"""
Seeded random probes and the invariant checks run by ``jetvar check``.

Exact checks report as residual the number of mismatching entries; the
first-variation check reports the largest absolute numeric residual.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional

import sympy as sp

from jetvar import config
from jetvar.boundary import boundary_linearization, boundary_total_derivative, pullback, restrict_operator
from jetvar.cdiff import PeelStrategy, apply, green_decompose
from jetvar.expr import Atom, BaseCoord, Expr, InteriorJetVar, JetSpace, MultiIndex
from jetvar.jetcalc import linearization, total_derivative
from jetvar.operators import GeneratingSection
from jetvar.variational import RelativeEulerResult, euler, first_variation, relative_euler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    residual: float


# ---------- random data ----------


def random_point(atoms: Iterable[Atom], rng: random.Random, radius: float = config.PROBE_RANGE) -> Dict[Atom, float]:
    return {a: rng.uniform(-radius, radius) for a in sorted(atoms, key=lambda a: a.name)}


def random_points(
    atoms: Iterable[Atom], count: int, rng: random.Random, radius: float = config.PROBE_RANGE
) -> List[Dict[Atom, float]]:
    atoms = list(atoms)
    return [random_point(atoms, rng, radius) for _ in range(count)]


def random_polynomial(
    space: JetSpace, rng: random.Random, degree: int = 3, jet_order: int = 1, terms: int = 3
) -> Expr:
    """Random polynomial in base coordinates and jet variables of order <= jet_order."""
    gens = [BaseCoord(i).symbol for i in range(1, space.n + 1)]
    for k in range(1, space.m + 1):
        for sigma in MultiIndex((jet_order,) * space.n).below():
            if sigma.order <= jet_order:
                gens.append(InteriorJetVar(k, sigma).symbol)
    total = sp.Integer(0)
    for _ in range(terms):
        monomial = sp.Integer(rng.randint(-3, 3) or 1)
        for _ in range(rng.randint(0, degree)):
            monomial *= rng.choice(gens)
        total += monomial
    return Expr.normalize(total, space)


def random_section(space: JetSpace, rng: random.Random) -> GeneratingSection:
    return GeneratingSection(tuple(random_polynomial(space, rng) for _ in range(space.m)))


# ---------- checks ----------


def _mismatches(a: Mapping, b: Mapping) -> int:
    keys = set(a) | set(b)
    return sum(1 for key in keys if a.get(key) != b.get(key))


def check_first_variation_suite(f: Expr, strategy: PeelStrategy, probes: int, rng: random.Random) -> CheckOutcome:
    worst, passed = 0.0, True
    for _ in range(config.SUITE_CASES):
        fv = first_variation(f, random_section(f.space, rng), strategy)
        report = fv.check(random_points(fv.atoms(), probes, rng))
        worst = max(worst, report.max_residual)
        passed = passed and report.passed
    return CheckOutcome("first_variation", passed, worst)


def check_green_identity(f: Expr, strategy: PeelStrategy, rng: random.Random) -> CheckOutcome:
    op = linearization(f)
    green = green_decompose(op, strategy)
    bad = 0
    for _ in range(config.SUITE_CASES):
        chi = random_section(f.space, rng)
        rhs = Expr.constant(0, f.space)
        for h, c in zip(green.adjoint_value, chi):
            rhs = rhs + h * c
        for i, eta in enumerate(green.current, start=1):
            rhs = rhs + total_derivative(apply(eta, chi), i)
        bad += apply(op, chi) != rhs
    return CheckOutcome("green_identity", bad == 0, float(bad))


def check_euler_agreement(f: Expr, result: RelativeEulerResult) -> CheckOutcome:
    bad = sum(a != b for a, b in zip(result.el, euler(f)))
    return CheckOutcome("euler_agreement", bad == 0, float(bad))


def check_strategy_invariance(f: Expr, result: RelativeEulerResult, strategy: PeelStrategy) -> CheckOutcome:
    other = PeelStrategy.ALTERNATE if strategy is PeelStrategy.DEFAULT else PeelStrategy.DEFAULT
    bad = _mismatches(result.theta, relative_euler(f, other).theta)
    return CheckOutcome("strategy_invariance", bad == 0, float(bad))


def check_alpha_proposition(f: Expr) -> CheckOutcome:
    lhs = restrict_operator(linearization(f))
    rhs = boundary_linearization(pullback(f))
    bad = _mismatches(lhs.coefficients, rhs.coefficients)
    return CheckOutcome("alpha_proposition", bad == 0, float(bad))


def check_tangency(f: Expr) -> Optional[CheckOutcome]:
    if f.space.n < 2:
        return None
    bad = sum(
        pullback(total_derivative(f, j)) != boundary_total_derivative(pullback(f), j)
        for j in range(1, f.space.n)
    )
    return CheckOutcome("tangency", bad == 0, float(bad))


def check_null_lagrangian(f: Expr) -> CheckOutcome:
    bad = 0
    for i in range(1, f.space.n + 1):
        bad += sum(not e.is_zero for e in euler(total_derivative(f, i)))
    return CheckOutcome("null_lagrangian", bad == 0, float(bad))


def run_checks(
    f: Expr,
    strategy: PeelStrategy = PeelStrategy.DEFAULT,
    probes: int = config.DEFAULT_PROBES,
    seed: int = config.DEFAULT_SEED,
    result: Optional[RelativeEulerResult] = None,
) -> List[CheckOutcome]:
    """Run every invariant relevant to the Lagrangian f; `result` may be supplied precomputed."""
    rng = random.Random(seed)
    if result is None:
        result = relative_euler(f, strategy)
    outcomes = [
        check_first_variation_suite(f, strategy, probes, rng),
        check_euler_agreement(f, result),
        check_strategy_invariance(f, result, strategy),
        check_green_identity(f, strategy, rng),
        check_alpha_proposition(f),
        check_tangency(f),
        check_null_lagrangian(f),
    ]
    outcomes = [o for o in outcomes if o is not None]
    for o in outcomes:
        logger.debug("check %s: passed=%s residual=%g", o.name, o.passed, o.residual)
    return outcomes
