"""
Atoms of jet expressions: base coordinates, interior and boundary jet
variables, and opaque whitelisted function calls.

Jet atoms are carried inside sympy as plain symbols whose names are the
printed grammar form (``x1``, ``u1_{2,3}``, ``ub1_3_{2}``); ``atom_of``
decodes a symbol back into its typed atom.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Dict, Tuple, Type, Union

import sympy as sp
from sympy.core.sorting import default_sort_key

from jetvar.errors import JetError
from jetvar.expr.multiindex import MultiIndex


class World(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class JetSpace:
    """J^inf(pi) over an n-dimensional base with m dependent variables; boundary x_n = 0."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise JetError(f"Jet space needs n >= 1 and m >= 1, got n={self.n}, m={self.m}")

    def dimension(self, world: World) -> int:
        return self.n if world is World.INTERIOR else self.n - 1

    def check_k(self, k: int) -> None:
        if not 1 <= k <= self.m:
            raise JetError(f"Dependent variable index k={k} out of range 1..{self.m}")


# ---------- Typed atoms ----------


@dataclass(frozen=True)
class BaseCoord:
    i: int

    @property
    def name(self) -> str:
        return f"x{self.i}"

    @property
    def symbol(self) -> sp.Symbol:
        return sp.Symbol(self.name)


@dataclass(frozen=True)
class InteriorJetVar:
    k: int
    sigma: MultiIndex

    @property
    def name(self) -> str:
        return f"u{self.k}_{{{self.sigma}}}"

    @property
    def symbol(self) -> sp.Symbol:
        return sp.Symbol(self.name)

    def shifted(self, i: int) -> InteriorJetVar:
        return InteriorJetVar(self.k, self.sigma.add(i))


@dataclass(frozen=True)
class BoundaryJetVar:
    """(u_i^k)_tau: i normal derivatives, tau tangential ones."""

    k: int
    i: int
    tau: MultiIndex

    @property
    def name(self) -> str:
        if self.tau.width == 0:
            return f"ub{self.k}_{self.i}"
        return f"ub{self.k}_{self.i}_{{{self.tau}}}"

    @property
    def symbol(self) -> sp.Symbol:
        return sp.Symbol(self.name)

    def shifted(self, j: int) -> BoundaryJetVar:
        return BoundaryJetVar(self.k, self.i, self.tau.add(j))


JetVar = Union[InteriorJetVar, BoundaryJetVar]
Atom = Union[BaseCoord, InteriorJetVar, BoundaryJetVar]


def world_of(atom: Atom) -> World | None:
    """World an atom belongs to; base coordinates are shared (None)."""
    if isinstance(atom, InteriorJetVar):
        return World.INTERIOR
    if isinstance(atom, BoundaryJetVar):
        return World.BOUNDARY
    return None


_BASE_RE = re.compile(r"^x(\d+)$")
_JET_RE = re.compile(r"^u(\d+)_\{([\d,]*)\}$")
_BJET_RE = re.compile(r"^ub(\d+)_(\d+)(?:_\{([\d,]*)\})?$")


def _entries(text: str | None) -> Tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


@lru_cache(maxsize=None)
def atom_of(symbol: sp.Symbol) -> Atom:
    name = symbol.name
    if m := _BASE_RE.match(name):
        return BaseCoord(int(m.group(1)))
    if m := _JET_RE.match(name):
        return InteriorJetVar(int(m.group(1)), MultiIndex(_entries(m.group(2))))
    if m := _BJET_RE.match(name):
        return BoundaryJetVar(
            int(m.group(1)), int(m.group(2)), MultiIndex(_entries(m.group(3)))
        )
    raise JetError(f"Symbol {name!r} is not a jet-space atom")


# ---------- Opaque function calls ----------


class FnCall(sp.Function):
    """Unevaluated whitelisted function; only the derivative table is known."""

    nargs = 1
    fname: ClassVar[str] = ""

    @property
    def arg(self) -> sp.Expr:
        return self.args[0]


class Sin(FnCall):
    fname = "sin"
    _imp_ = staticmethod(math.sin)

    def fdiff(self, argindex=1):
        return Cos(self.arg)


class Cos(FnCall):
    fname = "cos"
    _imp_ = staticmethod(math.cos)

    def fdiff(self, argindex=1):
        return -Sin(self.arg)


class Tan(FnCall):
    fname = "tan"
    _imp_ = staticmethod(math.tan)

    def fdiff(self, argindex=1):
        return 1 + Tan(self.arg) ** 2


class Exp(FnCall):
    fname = "exp"
    _imp_ = staticmethod(math.exp)

    def fdiff(self, argindex=1):
        return Exp(self.arg)


class Log(FnCall):
    fname = "log"
    _imp_ = staticmethod(math.log)

    def fdiff(self, argindex=1):
        return 1 / self.arg


class Sqrt(FnCall):
    fname = "sqrt"
    _imp_ = staticmethod(math.sqrt)

    def fdiff(self, argindex=1):
        return 1 / (2 * Sqrt(self.arg))


FUNCTIONS: Dict[str, Type[FnCall]] = {
    cls.fname: cls for cls in (Sin, Cos, Tan, Exp, Log, Sqrt)
}


# ---------- Total order on generators ----------


def generator_key(gen: sp.Expr) -> tuple:
    """BaseCoord < InteriorJetVar < BoundaryJetVar < FnCall."""
    if isinstance(gen, sp.Symbol):
        atom = atom_of(gen)
        if isinstance(atom, BaseCoord):
            return (0, atom.i)
        if isinstance(atom, InteriorJetVar):
            return (1, atom.k, atom.sigma.entries)
        return (2, atom.k, atom.tau.entries, atom.i)
    if isinstance(gen, FnCall):
        return (3, gen.fname, default_sort_key(gen.arg))
    raise JetError(f"Unsupported generator {gen!r}")
