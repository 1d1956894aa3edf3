# jetvar/schemas/report.py
from __future__ import annotations

from typing import Iterable, List, Optional

from pydantic import BaseModel

from jetvar.cdiff import GreenDecomposition
from jetvar.suites import CheckOutcome
from jetvar.variational import RelativeEulerResult


class ThetaEntry(BaseModel):
    k: int
    i: int
    expr: str


class CurrentEntry(BaseModel):
    k: int
    sigma: List[int]
    expr: str


class GreenOut(BaseModel):
    h: List[str]
    currents: List[List[CurrentEntry]]


class CheckOut(BaseModel):
    name: str
    passed: bool
    residual: float


class Report(BaseModel):
    el: List[str] = []
    theta: List[ThetaEntry] = []
    green: Optional[GreenOut] = None
    checks: List[CheckOut] = []

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class PullbackOut(BaseModel):
    expr: str
    pullback: str


def green_out(green: GreenDecomposition) -> GreenOut:
    currents = [
        [CurrentEntry(k=k, sigma=list(sigma), expr=str(a)) for (k, sigma), a in eta.items()]
        for eta in green.current
    ]
    return GreenOut(h=[str(h) for h in green.adjoint_value], currents=currents)


def checks_out(outcomes: Iterable[CheckOutcome]) -> List[CheckOut]:
    return [CheckOut(name=o.name, passed=o.passed, residual=o.residual) for o in outcomes]


def build_report(
    result: RelativeEulerResult,
    with_theta: bool = True,
    with_green: bool = False,
    outcomes: Iterable[CheckOutcome] = (),
) -> Report:
    theta = (
        [ThetaEntry(k=k, i=i, expr=str(v)) for (k, i), v in result.theta.items()] if with_theta else []
    )
    green = green_out(result.green) if with_green and result.green is not None else None
    return Report(el=[str(e) for e in result.el], theta=theta, green=green, checks=checks_out(outcomes))
