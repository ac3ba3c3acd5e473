"""Ascii expression grammar, renderers, and the json wire format.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' INT] | '-' factor
    atom   := INT | IDENT | '(' expr ')'

Identifiers: ``z``, ``zb``, ``u``, ``u<N>``, ``ub<N>``, ``F<N>`` and the aliases
``f`` (F0), ``fu`` (F1), ``Sf`` (antiderivative of f), the imaginary unit ``i``;
any other identifier is a parameter.  Division is only allowed by nonzero
constants, so ``p/q`` denotes a rational literal.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Optional

from .scalar import GaussScalar
from .poly import (
    DiffPoly,
    FTower,
    Monomial,
    Param,
    U,
    Uj,
    UjBar,
    Var,
    Z,
    ZBAR,
    var_name,
)


class ExprError(ValueError):
    def __init__(self, message: str, text: str = "", pos: Optional[int] = None) -> None:
        self.message = message
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class ExprSyntaxError(ExprError):
    pass


class UnknownIdentifier(ExprError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_JET = re.compile(r"(ub|u|F)(\d+)$")
_RESERVED_PREFIX = re.compile(r"(ub|u|F|zb|z)[0-9_]")
_ALIASES = {
    "z": Z,
    "zb": ZBAR,
    "u": U,
    "f": FTower(0),
    "fu": FTower(1),
    "Sf": FTower(-1),
}


def ident_to_var(name: str) -> Optional[Var]:
    """Map an identifier to a jet/tower variable, or ``None`` for a parameter."""
    if name in _ALIASES:
        return _ALIASES[name]
    m = _JET.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"u": Uj, "ub": UjBar, "F": FTower}[kind](n)
    if _RESERVED_PREFIX.match(name):
        raise UnknownIdentifier(f"unknown identifier {name!r}")
    return None


def name_to_var(name: str) -> Var:
    v = ident_to_var(name)
    return v if v is not None else Param(name)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, m.start(3))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, allowed_params: Optional[set[str]], params_only: bool) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.allowed = allowed_params
        self.params_only = params_only

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.k]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, pos = self.take()
        if val != value or kind != "op":
            raise ExprSyntaxError(f"expected {value!r}", self.text, pos)

    def parse(self) -> DiffPoly:
        kind, _, pos = self.peek()
        if kind == "end":
            raise ExprSyntaxError("empty expression", self.text, pos)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", self.text, pos)
        return p

    def expr(self) -> DiffPoly:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> DiffPoly:
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                den = self.factor()
                if not den.is_constant() or den.is_zero():
                    raise ExprSyntaxError("division only by a nonzero constant", self.text, pos)
                acc = acc / den.constant_value()
            else:
                return acc

    def factor(self) -> DiffPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, p2 = self.take()
            if k2 != "int":
                raise ExprSyntaxError("exponent must be a non-negative integer", self.text, p2)
            return base ** int(v2)
        return base

    def atom(self) -> DiffPoly:
        kind, val, pos = self.take()
        if kind == "int":
            return DiffPoly.const(int(val))
        if kind == "ident":
            if val == "i":
                return DiffPoly.const(GaussScalar(0, 1))
            try:
                v = ident_to_var(val)
            except UnknownIdentifier as exc:
                raise UnknownIdentifier(exc.message, self.text, pos) from None
            if v is None:
                if self.allowed is not None and val not in self.allowed:
                    raise UnknownIdentifier(f"unknown identifier {val!r}", self.text, pos)
                v = Param(val)
            elif self.params_only:
                raise UnknownIdentifier(f"{val!r} is not a parameter", self.text, pos)
            return DiffPoly.var(v)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", self.text, pos)
        raise ExprSyntaxError(f"unexpected token {val!r}", self.text, pos)


def parse_expr(
    text: str,
    allowed_params: Optional[Iterable[str]] = None,
    params_only: bool = False,
) -> DiffPoly:
    allowed = set(allowed_params) if allowed_params is not None else None
    return _Parser(text, allowed, params_only).parse()


# -- rendering ---------------------------------------------------------------


def _frac_text(q: Fraction) -> str:
    return str(q) if q.denominator == 1 else f"({q})"


def _coeff_text(c: GaussScalar, has_mono: bool) -> tuple[int, str]:
    """Return (sign, magnitude text) so that the term is ``sign * text``."""
    if not c.im:
        sign = -1 if c.re < 0 else 1
        mag = abs(c.re)
        if mag == 1 and has_mono:
            return sign, ""
        return sign, _frac_text(mag)
    if not c.re:
        sign = -1 if c.im < 0 else 1
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{_frac_text(mag)}*i"
    im = c.im
    inner = f"{c.re} {'+' if im > 0 else '-'} {'' if abs(im) == 1 else str(abs(im)) + '*'}i"
    return 1, f"({inner})"


def _mono_text(m: Monomial) -> str:
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


def _render_text(p: DiffPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_items()):
        sign, mag = _coeff_text(c, bool(m))
        mono = _mono_text(m)
        body = "*".join(x for x in (mag, mono) if x)
        if k == 0:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)


def _latex_var(v: Var) -> str:
    if v.is_param():
        return v.name if len(v.name) == 1 else r"\mathrm{" + v.name + "}"
    if v.is_tower():
        return {-1: r"\int f", 0: "f", 1: "f_{u}", 2: "f_{uu}"}.get(v.index, f"f^{{({v.index})}}")
    if v == U:
        return "u"
    if v == Z:
        return "z"
    if v == ZBAR:
        return r"\bar{z}"
    if v.is_holomorphic_jet():
        return f"u_{{{v.n}}}"
    return rf"\bar{{u}}_{{{v.n}}}"


def _latex_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _render_latex(p: DiffPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_items()):
        if not c.im or not c.re:
            val = c.re if not c.im else c.im
            sign = -1 if val < 0 else 1
            mag = abs(val)
            coeff = "" if (mag == 1 and m) else _latex_frac(mag)
            if c.im:
                coeff = (coeff if mag != 1 else "") + "i"
        else:
            sign = 1
            im = c.im
            coeff = (
                rf"\left({_latex_frac(c.re)} {'+' if im > 0 else '-'} "
                rf"{'' if abs(im) == 1 else _latex_frac(abs(im))}i\right)"
            )
        mono = " ".join(
            _latex_var(v) if e == 1 else (
                rf"\left({_latex_var(v)}\right)^{{{e}}}" if v.is_tower() and v.index == -1
                else f"{_latex_var(v)}^{{{e}}}"
            )
            for v, e in m
        )
        body = " ".join(x for x in (coeff, mono) if x)
        if k == 0:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)


def _q_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def to_json_obj(p: DiffPoly) -> dict:
    return {
        "terms": [
            {"c": [_q_str(c.re), _q_str(c.im)], "m": {var_name(v): e for v, e in m}}
            for m, c in p.sorted_items()
        ]
    }


def from_json_obj(obj: dict) -> DiffPoly:
    terms = {}
    for t in obj["terms"]:
        re_s, im_s = t["c"]
        c = GaussScalar(Fraction(re_s), Fraction(im_s))
        m = tuple(sorted((name_to_var(k), int(e)) for k, e in t["m"].items()))
        terms[m] = terms.get(m, GaussScalar(0)) + c
    return DiffPoly(terms)


def render(p: DiffPoly, format: str = "text") -> str:
    if format == "text":
        return _render_text(p)
    if format == "latex":
        return _render_latex(p)
    if format == "json":
        return json.dumps(to_json_obj(p), separators=(",", ":"))
    raise ValueError(f"unknown format {format!r}")


def parse_model(text: str):
    """``generic``, ``fuu=<e>*f`` or ``fuu=<e1>*fu+<e2>*f``."""
    from .model import PotentialModel

    s = text.strip()
    if s.lower() == "generic":
        return PotentialModel.generic()
    if "=" not in s:
        raise ExprSyntaxError("model must be 'generic' or 'fuu=...'", text, 0)
    lhs, rhs = s.split("=", 1)
    if lhs.strip() != "fuu":
        raise ExprSyntaxError("model left-hand side must be 'fuu'", text, 0)
    offset = len(lhs) + 1
    try:
        p = parse_expr(rhs)
    except ExprError as exc:
        pos = exc.pos + offset if exc.pos is not None else None
        raise type(exc)(exc.message, text, pos) from None
    f0, f1 = FTower(0), FTower(1)
    l1: dict = {}
    l2: dict = {}
    for m, c in p.items():
        tower = [(v, e) for v, e in m if not v.is_param()]
        rest = tuple((v, e) for v, e in m if v.is_param())
        if tower == [(f1, 1)]:
            l1[rest] = c
        elif tower == [(f0, 1)]:
            l2[rest] = c
        else:
            raise ExprSyntaxError(
                "right-hand side must be linear in f, fu with parameter coefficients", text, offset
            )
    return PotentialModel(DiffPoly(l1), DiffPoly(l2))
