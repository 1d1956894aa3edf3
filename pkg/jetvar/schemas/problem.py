# jetvar/schemas/problem.py
from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from jetvar import config
from jetvar.expr import Expr, JetSpace, World, parse


class ProblemOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")
    strategy: Literal["default", "alternate"] = "default"
    probes: int = Field(default_factory=lambda: config.DEFAULT_PROBES, ge=1)
    seed: int = Field(default_factory=lambda: config.DEFAULT_SEED)


class ProblemSpec(BaseModel):
    """A Lagrangian density f on J(R^n, R^m) with boundary x_n = 0."""

    model_config = ConfigDict(extra="forbid")
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    lagrangian: str
    normal_axis: Optional[int] = None
    options: ProblemOptions = Field(default_factory=ProblemOptions)

    @model_validator(mode="after")
    def _check_problem(self) -> "ProblemSpec":
        if self.normal_axis is None:
            self.normal_axis = self.n
        elif self.normal_axis != self.n:
            raise ValueError(f"normal_axis is fixed to n={self.n}, got {self.normal_axis}")
        parse(self.lagrangian, self.space, World.INTERIOR)
        return self

    @property
    def space(self) -> JetSpace:
        return JetSpace(self.n, self.m)

    def parsed(self) -> Expr:
        return parse(self.lagrangian, self.space, World.INTERIOR)


def load_problem(path: Union[str, Path]) -> ProblemSpec:
    return ProblemSpec.model_validate_json(Path(path).read_text())
