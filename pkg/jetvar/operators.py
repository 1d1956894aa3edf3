"""
Data types for C-differential operators and generating sections.

Interior operators are sum a_{k,sigma} D_sigma o Pi^(k); boundary operators
are sum b_{k,i,tau} D_tau o Pi^(k,i). Both keep only non-zero coefficients,
sorted by key, so equality is coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, Mapping, Tuple, TypeVar

from jetvar.errors import JetError, WorldMismatchError
from jetvar.expr import Expr, JetSpace, MultiIndex, World

K = TypeVar("K", bound=Hashable)

OpKey = Tuple[int, MultiIndex]
BoundaryOpKey = Tuple[int, int, MultiIndex]
SectionKey = Tuple[int, int]


def _clean(
    coefficients: Mapping[K, Expr], space: JetSpace, world: World, what: str
) -> Dict[K, Expr]:
    out: Dict[K, Expr] = {}
    for key, coeff in coefficients.items():
        if coeff.space != space:
            raise JetError(f"{what} coefficient at {key} lives over {coeff.space}, expected {space}")
        if coeff.world is not world:
            raise WorldMismatchError(f"{what} coefficient at {key} is {coeff.world.value}, expected {world.value}")
        if not coeff.is_zero:
            out[key] = coeff
    return dict(sorted(out.items()))


def accumulate(target: Dict[K, Expr], key: K, value: Expr) -> None:
    """target[key] += value, dropping the entry when it cancels."""
    total = target[key] + value if key in target else value
    if total.is_zero:
        target.pop(key, None)
    else:
        target[key] = total


# ---------- Generating sections ----------


@dataclass(frozen=True)
class GeneratingSection:
    """chi = (chi^1..chi^m), interior."""

    components: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if not comps:
            raise JetError("A generating section needs at least one component")
        space = comps[0].space
        if len(comps) != space.m:
            raise JetError(f"Generating section has {len(comps)} components, expected m={space.m}")
        for c in comps:
            if c.world is not World.INTERIOR or c.space != space:
                raise WorldMismatchError("Generating section components must be interior expressions")
        object.__setattr__(self, "components", comps)

    @property
    def space(self) -> JetSpace:
        return self.components[0].space

    def __getitem__(self, k: int) -> Expr:
        """1-based: section[k] is chi^k."""
        return self.components[k - 1]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class BoundaryGeneratingSection:
    """psi = (..., psi_i^k, ...) on the boundary, finite support."""

    space: JetSpace
    components: Mapping[SectionKey, Expr] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, i in self.components:
            self.space.check_k(k)
            if i < 0:
                raise JetError(f"Normal order must be non-negative, got {i}")
        object.__setattr__(
            self, "components", _clean(self.components, self.space, World.BOUNDARY, "Boundary section")
        )

    def get(self, k: int, i: int) -> Expr:
        c = self.components.get((k, i))
        return c if c is not None else Expr.constant(0, self.space, World.BOUNDARY)

    def __hash__(self) -> int:
        return hash((self.space, tuple(self.components.items())))


# ---------- Operators ----------


class _OperatorBase:
    space: JetSpace
    coefficients: Mapping

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.space == other.space and dict(self.coefficients) == dict(other.coefficients)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.space, tuple(self.coefficients.items())))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def items(self) -> Iterable:
        return self.coefficients.items()

    def __len__(self) -> int:
        return len(self.coefficients)

    def _combine(self, other, sign: int):
        if type(other) is not type(self) or other.space != self.space:
            raise JetError("Cannot combine operators of different kinds or spaces")
        out = dict(self.coefficients)
        for key, c in other.coefficients.items():
            accumulate(out, key, c if sign > 0 else -c)
        return type(self)(self.space, out)

    def __add__(self, other):
        return self._combine(other, +1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)(self.space, {key: -c for key, c in self.coefficients.items()})

    def scaled(self, f):
        """Left multiplication of every coefficient by a scalar or Expr."""
        return type(self)(self.space, {key: c * f for key, c in self.coefficients.items()})


@dataclass(frozen=True, eq=False)
class CDiffOp(_OperatorBase):
    """Scalar-valued interior operator sum a_{k,sigma} D_sigma o Pi^(k)."""

    space: JetSpace
    coefficients: Mapping[OpKey, Expr] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, sigma in self.coefficients:
            self.space.check_k(k)
            if sigma.width != self.space.n:
                raise JetError(f"Operator multi-index {sigma} has width {sigma.width}, expected {self.space.n}")
        object.__setattr__(
            self, "coefficients", _clean(self.coefficients, self.space, World.INTERIOR, "Operator")
        )

    @classmethod
    def zero(cls, space: JetSpace) -> CDiffOp:
        return cls(space, {})

    @classmethod
    def identity(cls, space: JetSpace, k: int = 1) -> CDiffOp:
        return cls(space, {(k, MultiIndex.zero(space.n)): Expr.constant(1, space)})

    def coefficient(self, k: int, sigma: MultiIndex) -> Expr:
        c = self.coefficients.get((k, sigma))
        return c if c is not None else Expr.constant(0, self.space)

    @property
    def order(self) -> int:
        return max((sigma.order for _, sigma in self.coefficients), default=0)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c})*D_{{{sigma}}}[{k}]" for (k, sigma), c in self.coefficients.items())


@dataclass(frozen=True, eq=False)
class BoundaryCDiffOp(_OperatorBase):
    """Boundary operator sum b_{k,i,tau} D_tau o Pi^(k,i)."""

    space: JetSpace
    coefficients: Mapping[BoundaryOpKey, Expr] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, i, tau in self.coefficients:
            self.space.check_k(k)
            if i < 0:
                raise JetError(f"Normal order must be non-negative, got {i}")
            if tau.width != self.space.n - 1:
                raise JetError(f"Boundary multi-index {tau} has width {tau.width}, expected {self.space.n - 1}")
        object.__setattr__(
            self, "coefficients", _clean(self.coefficients, self.space, World.BOUNDARY, "Boundary operator")
        )

    @classmethod
    def zero(cls, space: JetSpace) -> BoundaryCDiffOp:
        return cls(space, {})

    def coefficient(self, k: int, i: int, tau: MultiIndex) -> Expr:
        c = self.coefficients.get((k, i, tau))
        return c if c is not None else Expr.constant(0, self.space, World.BOUNDARY)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(
            f"({c})*D_{{{tau}}}[{k},{i}]" for (k, i, tau), c in self.coefficients.items()
        )
