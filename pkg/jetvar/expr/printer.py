"""Canonical text output in the expression grammar (re-parseable)."""

from __future__ import annotations

from typing import List, Tuple

import sympy as sp

from jetvar.expr.atoms import FnCall, generator_key
from jetvar.expr.core import Expr, _generators, _normalize_cached


def _rational_text(q: sp.Rational) -> str:
    q = sp.Rational(q)
    return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"


def _generator_text(gen: sp.Expr) -> str:
    if isinstance(gen, FnCall):
        num, den = _normalize_cached(gen.arg)
        return f"{gen.fname}({value_text(num, den)})"
    return gen.name


def _terms(poly_expr: sp.Expr) -> List[Tuple[sp.Rational, str, int]]:
    gens = _generators(poly_expr)
    if not gens:
        return [(sp.Rational(poly_expr), "", 0)] if poly_expr != 0 else []
    poly = sp.Poly(poly_expr, *gens, domain="QQ")
    out = []
    for monom, coeff in poly.terms():
        factors = sorted(
            ((g, e) for g, e in zip(gens, monom) if e), key=lambda ge: generator_key(ge[0])
        )
        mono = "*".join(
            _generator_text(g) if e == 1 else f"{_generator_text(g)}^{e}" for g, e in factors
        )
        out.append((sp.Rational(coeff), mono, len(factors)))
    return out


def _term_text(c: sp.Rational, mono: str) -> str:
    if not mono:
        return _rational_text(c)
    if c == 1:
        return mono
    return f"{_rational_text(c)}*{mono}"


def polynomial_text(poly_expr: sp.Expr) -> str:
    terms = _terms(poly_expr)
    if not terms:
        return "0"
    parts: List[str] = []
    for idx, (c, mono, _) in enumerate(terms):
        body = _term_text(abs(c), mono)
        if idx == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


def value_text(num: sp.Expr, den: sp.Expr) -> str:
    top = polynomial_text(num)
    if den == 1:
        return top
    if len(_terms(num)) > 1:
        top = f"({top})"
    bottom_terms = _terms(den)
    bottom = polynomial_text(den)
    # a lone atom power needs no parentheses: x/y^2 reads as x/(y^2)
    single_atom = (
        len(bottom_terms) == 1 and bottom_terms[0][0] == 1 and bottom_terms[0][2] == 1
    )
    if not single_atom:
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


def to_text(e: Expr) -> str:
    return value_text(e.num, e.den)
