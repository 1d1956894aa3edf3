"""
Canonical jet expressions.

An ``Expr`` is a single quotient num/den of polynomials with rational
coefficients over the atoms of one world. Function calls are opaque
generators keyed by their (normalized) argument, so the canonical form is
unique for the rational subclass and structural equality is exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import FrozenSet, Mapping, Tuple, Union

import sympy as sp

from jetvar.errors import EvaluationError, JetError, WorldMismatchError
from jetvar.expr.atoms import (
    Atom,
    BaseCoord,
    BoundaryJetVar,
    FnCall,
    InteriorJetVar,
    JetSpace,
    World,
    atom_of,
    generator_key,
    world_of,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, Rational]


# ---------- Normalization ----------


def _rebuild_calls(raw: sp.Expr) -> sp.Expr:
    """Bottom-up: replace every call argument by its canonical num/den value."""
    if isinstance(raw, FnCall):
        num, den = _canonical_pair(_rebuild_calls(raw.arg))
        return type(raw)(num / den)
    if not raw.args:
        return raw
    return raw.func(*(_rebuild_calls(a) for a in raw.args))


def _generators(*exprs: sp.Expr) -> Tuple[sp.Expr, ...]:
    gens = set()
    for e in exprs:
        gens |= e.free_symbols
        gens |= e.atoms(FnCall)
    return tuple(sorted(gens, key=generator_key, reverse=True))


def _canonical_pair(raw: sp.Expr) -> Tuple[sp.Expr, sp.Expr]:
    """(num, den) with gcd cancelled and den normalized to leading coefficient 1."""
    if raw.has(sp.Float):
        raise JetError(f"Floating-point coefficients are not allowed: {raw}")
    num, den = sp.fraction(sp.cancel(sp.together(raw)))
    gens = _generators(num, den)
    if not gens:
        n, d = sp.Rational(num), sp.Rational(den)
        if d == 0:
            raise ZeroDivisionError("Division by the zero polynomial")
        return n / d, sp.Integer(1)
    p = sp.Poly(num, *gens, domain="QQ")
    q = sp.Poly(den, *gens, domain="QQ")
    if q.is_zero:
        raise ZeroDivisionError("Division by the zero polynomial")
    g = sp.gcd(p, q)
    if not g.is_one:
        p, q = p.exquo(g), q.exquo(g)
    lc = q.LC()
    p, q = p.quo_ground(lc), q.quo_ground(lc)
    return p.as_expr(), q.as_expr()


@lru_cache(maxsize=65536)
def _normalize_cached(raw: sp.Expr) -> Tuple[sp.Expr, sp.Expr]:
    return _canonical_pair(_rebuild_calls(raw))


def _check_symbols(raw: sp.Expr, space: JetSpace, world: World) -> None:
    dim = space.dimension(world)
    for sym in raw.free_symbols:
        atom = atom_of(sym)
        w = world_of(atom)
        if w is not None and w is not world:
            raise WorldMismatchError(f"Atom {sym} does not belong to the {world.value} world")
        if isinstance(atom, BaseCoord):
            if not 1 <= atom.i <= dim:
                raise JetError(f"Base coordinate x{atom.i} out of range 1..{dim} ({world.value})")
            continue
        space.check_k(atom.k)
        index = atom.sigma if isinstance(atom, InteriorJetVar) else atom.tau
        if index.width != dim:
            raise JetError(f"Multi-index of {sym} has width {index.width}, expected {dim}")


# ---------- Expr ----------


@dataclass(frozen=True)
class Expr:
    """Canonical expression num/den in one world of a jet space."""

    num: sp.Expr
    den: sp.Expr
    space: JetSpace
    world: World = World.INTERIOR

    @classmethod
    def normalize(
        cls, raw: sp.Expr | Scalar, space: JetSpace, world: World = World.INTERIOR
    ) -> Expr:
        raw = sp.sympify(raw)
        _check_symbols(raw, space, world)
        num, den = _normalize_cached(raw)
        return cls(num, den, space, world)

    @classmethod
    def constant(cls, value: Scalar, space: JetSpace, world: World = World.INTERIOR) -> Expr:
        q = Fraction(value)
        return cls.normalize(sp.Rational(q.numerator, q.denominator), space, world)

    @classmethod
    def from_atom(cls, atom: Atom, space: JetSpace, world: World | None = None) -> Expr:
        return cls.normalize(atom.symbol, space, world or world_of(atom) or World.INTERIOR)

    # --- views ---

    @property
    def value(self) -> sp.Expr:
        return self.num / self.den

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    @property
    def is_constant(self) -> bool:
        return not self.value.free_symbols

    def atoms(self) -> FrozenSet[Atom]:
        """Every base coordinate and jet variable, including those inside calls."""
        return frozenset(atom_of(s) for s in self.value.free_symbols)

    def jet_atoms(self) -> FrozenSet[Atom]:
        return frozenset(a for a in self.atoms() if not isinstance(a, BaseCoord))

    def calls(self) -> FrozenSet[FnCall]:
        return frozenset(self.value.atoms(FnCall))

    def with_value(self, raw: sp.Expr) -> Expr:
        return Expr.normalize(raw, self.space, self.world)

    def zero(self) -> Expr:
        return Expr.constant(0, self.space, self.world)

    # --- arithmetic ---

    def _coerce(self, other: Expr | Scalar) -> Expr:
        if isinstance(other, Expr):
            if other.world is not self.world or other.space != self.space:
                raise WorldMismatchError(
                    f"Cannot combine {self.world.value} expression over {self.space} "
                    f"with {other.world.value} expression over {other.space}"
                )
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Expr.constant(other, self.space, self.world)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.with_value(self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.with_value(self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.with_value(self.value * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial")
        return self.with_value(self.value / o.value)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self) -> Expr:
        return self.with_value(-self.value)

    def __pow__(self, exponent: int) -> Expr:
        if not isinstance(exponent, int) or exponent < 0:
            raise JetError(f"Only non-negative integer powers are supported, got {exponent!r}")
        return self.with_value(self.value**exponent)

    def __str__(self) -> str:
        from jetvar.expr.printer import to_text

        return to_text(self)

    def __repr__(self) -> str:
        return f"Expr({self}, world={self.world.value})"


def normalize(raw: sp.Expr | Scalar, space: JetSpace, world: World = World.INTERIOR) -> Expr:
    return Expr.normalize(raw, space, world)


def ensure_world(e: Expr, world: World, what: str = "expression") -> None:
    if e.world is not world:
        raise WorldMismatchError(f"Expected {world.value} {what}, got {e.world.value}")


# ---------- partial ----------


def partial(e: Expr, v: Atom) -> Expr:
    """Formal partial derivative; distinct atoms are independent, calls use the derivative table."""
    w = world_of(v)
    if w is not None and w is not e.world:
        raise WorldMismatchError(f"Cannot differentiate a {e.world.value} expression by {v.name}")
    if isinstance(v, (BaseCoord, InteriorJetVar, BoundaryJetVar)):
        sym = v.symbol
    else:
        raise JetError(f"Cannot differentiate with respect to {v!r}")
    if sym not in e.value.free_symbols:
        return e.zero()
    return e.with_value(sp.diff(e.value, sym))


# ---------- numeric evaluation ----------


@lru_cache(maxsize=4096)
def _compiled(num: sp.Expr, den: sp.Expr, symbols: Tuple[sp.Symbol, ...]):
    return (
        sp.lambdify(symbols, num, modules="math"),
        sp.lambdify(symbols, den, modules="math"),
    )


def evaluate(e: Expr, assignment: Mapping[Atom, float]) -> float:
    """Floating evaluation of e at a point; every atom of e must be assigned."""
    symbols = tuple(sorted(e.value.free_symbols, key=generator_key))
    values = []
    for sym in symbols:
        atom = atom_of(sym)
        if atom not in assignment:
            raise EvaluationError(f"No value assigned to atom {sym}")
        values.append(float(assignment[atom]))
    f_num, f_den = _compiled(e.num, e.den, symbols)
    try:
        d = float(f_den(*values))
        v = float(f_num(*values))
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise EvaluationError(f"Cannot evaluate {e}: {exc}") from exc
    if d == 0.0:
        raise EvaluationError(f"Pole of {e}: denominator vanishes")
    return v / d
