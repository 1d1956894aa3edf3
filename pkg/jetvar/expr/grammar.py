"""
Parser for the jet expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' int)?
    base   := number | atom | fn '(' expr ')' | '(' expr ')'

Atoms: ``x<i>``, ``u<k>_{s1,...,sn}`` (braces optional when all zero) and
``ub<k>_<i>_{t1,...,t(n-1)}``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import lark
import sympy as sp

from jetvar.errors import JetError, ParseError
from jetvar.expr.atoms import (
    FUNCTIONS,
    BaseCoord,
    BoundaryJetVar,
    InteriorJetVar,
    JetSpace,
    World,
)
from jetvar.expr.core import Expr
from jetvar.expr.multiindex import MultiIndex

GRAMMAR = r"""
?start: sum

?sum: product
    | sum "+" product   -> add
    | sum "-" product   -> sub

?product: unary
    | product "*" unary -> mul
    | product "/" unary -> div

?unary: power
    | "-" unary         -> neg

?power: base
    | base "^" INT      -> pow

?base: NUMBER           -> number
    | BASE_COORD        -> base_coord
    | BOUNDARY_JET      -> boundary_jet
    | INTERIOR_JET      -> interior_jet
    | FN "(" sum ")"    -> call
    | "(" sum ")"

FN.2: "sin" | "cos" | "tan" | "exp" | "log" | "sqrt"
BASE_COORD: /x[0-9]+/
BOUNDARY_JET.1: /ub[0-9]+_[0-9]+(_\{\s*([0-9]+(\s*,\s*[0-9]+)*)?\s*\})?/
INTERIOR_JET: /u[0-9]+(_\{\s*([0-9]+(\s*,\s*[0-9]+)*)?\s*\})?/
NUMBER: /[0-9]+(\.[0-9]+)?/

%import common.INT
%import common.WS
%ignore WS
"""


@lru_cache(maxsize=1)
def _parser() -> lark.Lark:
    return lark.Lark(GRAMMAR, parser="lalr", propagate_positions=True)


def _index(text: str) -> tuple[int, ...]:
    if "{" not in text:
        return ()
    inner = text[text.index("{") + 1 : text.rindex("}")]
    return tuple(int(t) for t in inner.replace(" ", "").split(",") if t)


class _ToSympy(lark.Transformer):
    """Build a raw sympy tree, validating atoms against the jet space and world."""

    def __init__(self, space: JetSpace, world: World):
        super().__init__()
        self.space = space
        self.world = world
        self.dim = space.dimension(world)

    def _fail(self, token: lark.Token, message: str):
        raise ParseError(message, token.start_pos or 0, token.column)

    def number(self, items):
        (tok,) = items
        q = Fraction(str(tok))
        return sp.Rational(q.numerator, q.denominator)

    def base_coord(self, items):
        (tok,) = items
        i = int(str(tok)[1:])
        if not 1 <= i <= self.dim:
            self._fail(tok, f"Base coordinate {tok} out of range 1..{self.dim} ({self.world.value})")
        return BaseCoord(i).symbol

    def interior_jet(self, items):
        (tok,) = items
        if self.world is not World.INTERIOR:
            self._fail(tok, f"Interior jet variable {tok} in a boundary expression")
        text = str(tok)
        k = int(text[1:].split("_")[0])
        self._check_k(tok, k)
        entries = _index(text) if "{" in text else (0,) * self.dim
        if len(entries) != self.dim:
            self._fail(tok, f"Multi-index of {tok} has width {len(entries)}, expected {self.dim}")
        return InteriorJetVar(k, MultiIndex(entries)).symbol

    def boundary_jet(self, items):
        (tok,) = items
        if self.world is not World.BOUNDARY:
            self._fail(tok, f"Boundary jet variable {tok} in an interior expression")
        text = str(tok)
        head = text.split("_{")[0]
        k_text, i_text = head[2:].split("_")
        k, i = int(k_text), int(i_text)
        self._check_k(tok, k)
        entries = _index(text) if "{" in text else (0,) * self.dim
        if len(entries) != self.dim:
            self._fail(tok, f"Multi-index of {tok} has width {len(entries)}, expected {self.dim}")
        return BoundaryJetVar(k, i, MultiIndex(entries)).symbol

    def _check_k(self, tok: lark.Token, k: int) -> None:
        if not 1 <= k <= self.space.m:
            self._fail(tok, f"Dependent variable index in {tok} out of range 1..{self.space.m}")

    def call(self, items):
        fn, arg = items
        return FUNCTIONS[str(fn)](arg)

    def add(self, items):
        return items[0] + items[1]

    def sub(self, items):
        return items[0] - items[1]

    def mul(self, items):
        return items[0] * items[1]

    def div(self, items):
        if items[1] == 0:
            raise ZeroDivisionError("Division by the zero polynomial")
        return items[0] / items[1]

    def neg(self, items):
        return -items[0]

    def pow(self, items):
        return items[0] ** int(items[1])


def parse_raw(text: str, space: JetSpace, world: World = World.INTERIOR) -> sp.Expr:
    try:
        tree = _parser().parse(text)
    except lark.exceptions.UnexpectedInput as exc:
        pos = getattr(exc, "pos_in_stream", None)
        if pos is None or pos < 0:
            pos = len(text)
        raise ParseError(f"Syntax error in {text!r}", pos, getattr(exc, "column", None)) from exc
    try:
        return _ToSympy(space, world).transform(tree)
    except lark.exceptions.VisitError as exc:
        if isinstance(exc.orig_exc, (JetError, ZeroDivisionError)):
            raise exc.orig_exc from None
        raise


def parse(text: str, space: JetSpace, world: World = World.INTERIOR) -> Expr:
    """Parse text into a canonical Expr of the given world."""
    return Expr.normalize(parse_raw(text, space, world), space, world)
