"""
C-differential operators: application, formal adjoints and the
integration-by-parts (C-Green) decomposition

    box(chi) = sum_k h_k chi^k + sum_i D_i(eta_i(chi)),   h = box*(1).
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Dict, Tuple

from jetvar.errors import JetError
from jetvar.expr import Expr, MultiIndex, World
from jetvar.jetcalc import total_derivative, total_derivative_multi
from jetvar.operators import CDiffOp, GeneratingSection, OpKey, accumulate

logger = logging.getLogger(__name__)


class PeelStrategy(str, enum.Enum):
    DEFAULT = "default"  # peel the largest index i with sigma_i > 0
    ALTERNATE = "alternate"  # peel the smallest one

    def pick(self, sigma: MultiIndex) -> int:
        positions = [i for i, e in enumerate(sigma, start=1) if e > 0]
        return positions[-1] if self is PeelStrategy.DEFAULT else positions[0]


@dataclass(frozen=True)
class GreenDecomposition:
    """h = box*(1) and the current eta_1..eta_n (eta_i pairs with the dx_i-omitting basis form)."""

    adjoint_value: Tuple[Expr, ...]
    current: Tuple[CDiffOp, ...]

    def eta(self, i: int) -> CDiffOp:
        """1-based: eta(i) is eta_i."""
        return self.current[i - 1]


def apply(op: CDiffOp, chi: GeneratingSection) -> Expr:
    """sum a_{k,sigma} D_sigma(chi^k)."""
    if chi.space != op.space:
        raise JetError(f"Section over {chi.space} does not match operator over {op.space}")
    total = Expr.constant(0, op.space)
    for (k, sigma), a in op.items():
        total = total + a * total_derivative_multi(chi[k], sigma)
    return total


def adjoint_value(op: CDiffOp) -> Tuple[Expr, ...]:
    """h_k = sum_sigma (-1)^|sigma| D_sigma(a_{k,sigma})."""
    h = [Expr.constant(0, op.space) for _ in range(op.space.m)]
    for (k, sigma), a in op.items():
        term = total_derivative_multi(a, sigma)
        h[k - 1] = h[k - 1] - term if sigma.order % 2 else h[k - 1] + term
    return tuple(h)


def adjoint(op: CDiffOp) -> CDiffOp:
    """
    Full formal adjoint of a scalar operator (m = 1):
    box* = sum_rho ( sum_{sigma >= rho} (-1)^|sigma| binom(sigma, rho) D_{sigma-rho}(a_sigma) ) D_rho.
    """
    if op.space.m != 1:
        raise JetError(f"The operator adjoint is defined here for m = 1, got m={op.space.m}")
    out: Dict[OpKey, Expr] = {}
    for (k, sigma), a in op.items():
        sign = -1 if sigma.order % 2 else 1
        for rho in sigma.below():
            term = total_derivative_multi(a, sigma - rho) * (sign * sigma.binomial(rho))
            accumulate(out, (k, rho), term)
    return CDiffOp(op.space, out)


def compose_total(op: CDiffOp, i: int) -> CDiffOp:
    """D_i o box."""
    out: Dict[OpKey, Expr] = {}
    for (k, sigma), a in op.items():
        accumulate(out, (k, sigma), total_derivative(a, i))
        accumulate(out, (k, sigma.add(i)), a)
    return CDiffOp(op.space, out)


def green_decompose(op: CDiffOp, strategy: PeelStrategy = PeelStrategy.DEFAULT) -> GreenDecomposition:
    """
    Peel a D_sigma = D_i o (a D_{sigma-1_i}) - (D_i a) D_{sigma-1_i} until only
    zero-order terms remain; the first summand accumulates into eta_i.
    Highest-order terms are peeled first, so each order level is visited once.
    """
    space = op.space
    work: Dict[OpKey, Expr] = dict(op.coefficients)
    currents: list[Dict[OpKey, Expr]] = [{} for _ in range(space.n)]
    peels = 0
    while True:
        pending = [key for key in work if key[1].order > 0]
        if not pending:
            break
        key = max(pending, key=lambda kk: (kk[1].order, kk))
        k, sigma = key
        a = work.pop(key)
        i = strategy.pick(sigma)
        lower = sigma.sub(i)
        accumulate(currents[i - 1], (k, lower), a)
        accumulate(work, (k, lower), -total_derivative(a, i))
        peels += 1
    logger.debug("green_decompose: %d peels with %s strategy", peels, strategy.value)
    zero = MultiIndex.zero(space.n)
    h = tuple(
        work.get((k, zero), Expr.constant(0, space, World.INTERIOR)) for k in range(1, space.m + 1)
    )
    return GreenDecomposition(h, tuple(CDiffOp(space, c) for c in currents))
