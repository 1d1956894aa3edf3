from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, Mapping, Tuple

from jetvar.errors import JetError, WorldMismatchError
from jetvar.expr.atoms import JetSpace, World
from jetvar.expr.core import Expr

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class HorizontalForm:
    """
    Horizontal q-form sum_J c_J dx_J over strictly increasing J.

    Zero coefficients are dropped at construction, so two forms are equal
    iff their coefficient maps are.
    """

    degree: int
    space: JetSpace
    world: World = World.INTERIOR
    coefficients: Mapping[Subset, Expr] = field(default_factory=dict)

    def __post_init__(self) -> None:
        dim = self.space.dimension(self.world)
        if not 0 <= self.degree <= dim:
            raise JetError(f"Form degree {self.degree} out of range 0..{dim}")
        clean: Dict[Subset, Expr] = {}
        for subset, coeff in self.coefficients.items():
            subset = tuple(subset)
            if len(subset) != self.degree or list(subset) != sorted(set(subset)):
                raise JetError(f"Basis subset {subset} is not a strictly increasing {self.degree}-subset")
            if any(not 1 <= i <= dim for i in subset):
                raise JetError(f"Basis subset {subset} out of range 1..{dim}")
            if coeff.world is not self.world:
                raise WorldMismatchError(
                    f"Coefficient of dx{subset} is {coeff.world.value}, form is {self.world.value}"
                )
            if not coeff.is_zero:
                clean[subset] = coeff
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    @classmethod
    def function(cls, f: Expr) -> HorizontalForm:
        return cls(0, f.space, f.world, {(): f})

    @classmethod
    def zero(cls, degree: int, space: JetSpace, world: World = World.INTERIOR) -> HorizontalForm:
        return cls(degree, space, world, {})

    @property
    def dimension(self) -> int:
        return self.space.dimension(self.world)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def basis(self) -> Iterator[Subset]:
        return combinations(range(1, self.dimension + 1), self.degree)

    def coefficient(self, subset: Subset) -> Expr:
        c = self.coefficients.get(tuple(subset))
        return c if c is not None else Expr.constant(0, self.space, self.world)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HorizontalForm):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.space == other.space
            and self.world is other.world
            and dict(self.coefficients) == dict(other.coefficients)
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.space, self.world, tuple(self.coefficients.items())))

    def __add__(self, other: HorizontalForm) -> HorizontalForm:
        if (self.degree, self.space, self.world) != (other.degree, other.space, other.world):
            raise JetError("Cannot add forms of different degree, space or world")
        out = dict(self.coefficients)
        for s, c in other.coefficients.items():
            out[s] = out[s] + c if s in out else c
        return HorizontalForm(self.degree, self.space, self.world, out)

    def scaled(self, f: Expr) -> HorizontalForm:
        return HorizontalForm(
            self.degree, self.space, self.world, {s: f * c for s, c in self.coefficients.items()}
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for subset, c in self.coefficients.items():
            basis = "^".join(f"dx{i}" for i in subset)
            parts.append(f"({c})" + (f"*{basis}" if basis else ""))
        return " + ".join(parts)
