"""Recursive-descent parser for series expressions.

Grammar, loosest binding first::

    expr    := sum ["mod" bound]
    sum     := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ["^" int]            (t takes an exponent literal instead)
    atom    := INT | t | X | "(" expr ")" | NAME "(" args ")"
    bound   := t "^" exponent | "[" q, ... "]"

Monomials are written ``t^[q1,...,qd]``; depth 1 also accepts ``t``,
``t^3``, ``t^-1`` and ``t^(1/2)``.  Integer literals are the only numbers;
``3/2`` is a division node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ..errors import DepthMismatchError, HahnfieldError
from ..exponents import Exponent

__all__ = [
    "ParseError",
    "Expr",
    "Num",
    "Mono",
    "Var",
    "Neg",
    "Bin",
    "Pow",
    "Call",
    "Mod",
    "Bound",
    "parse",
    "parse_poly",
    "to_text",
    "expr_depth",
    "FUNCTIONS",
]


class ParseError(HahnfieldError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Mono:
    exponent: Exponent


@dataclass(frozen=True)
class Var:
    name: str = "X"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    n: int


@dataclass(frozen=True)
class Bound:
    """An exponent used as a precision bound, printed ``t^[...]``."""

    exponent: Exponent


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Mod:
    operand: "Expr"
    bound: Bound


Expr = Union[Num, Mono, Var, Neg, Bin, Pow, Call, Mod, Bound]

# name -> argument kinds: "int" literal, "expr", or "bound"
FUNCTIONS = {
    "root": ("int", "expr"),
    "floor": ("expr",),
    "val": ("expr",),
    "res": ("int", "expr"),
    "coarsen": ("int", "expr"),
    "truncate": ("expr", "bound"),
}

_TOKEN = re.compile(r"(\d+)|([A-Za-z_]\w*)|(.)", re.S)
_SPACE = re.compile(r"\s*")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "sym", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", *_linecol(text, m.start(3)))
            toks.append(_Tok("sym", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text.rstrip())))
    return toks


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, allow_var: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_var = allow_var

    # token helpers ---------------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        return ParseError(message, *_linecol(self.text, tok.pos))

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def take(self, kind: str, text: Optional[str] = None) -> _Tok:
        if not self.at(kind, text):
            want = repr(text) if text else kind
            got = repr(self.tok.text) if self.tok.kind != "end" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str, text: Optional[str] = None) -> bool:
        if self.at(kind, text):
            self.i += 1
            return True
        return False

    # grammar ---------------------------------------------------------------
    def parse(self) -> Expr:
        if self.at("end"):
            raise self.error("empty expression")
        e = self.expr()
        if not self.at("end"):
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.sum()
        if self.accept("name", "mod"):
            e = Mod(e, self.bound())
        return e

    def sum(self) -> Expr:
        e = self.term()
        while self.at("sym", "+") or self.at("sym", "-"):
            op = self.take("sym").text
            e = Bin(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.at("sym", "*") or self.at("sym", "/"):
            op = self.take("sym").text
            e = Bin(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.accept("sym", "-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        if self.at("name", "t"):
            return Mono(self.monomial_exponent())
        base = self.atom()
        if self.accept("sym", "^"):
            return Pow(base, self.signed_int())
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text))
        if self.accept("sym", "("):
            e = self.expr()
            self.take("sym", ")")
            return e
        if t.kind == "name":
            if t.text == "X":
                if not self.allow_var:
                    raise self.error("the variable X is only allowed in polynomials")
                self.i += 1
                return Var()
            if t.text in FUNCTIONS:
                self.i += 1
                return self.call(t.text)
            raise self.error(f"unknown name {t.text!r}")
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")

    def call(self, name: str) -> Call:
        kinds = FUNCTIONS[name]
        self.take("sym", "(")
        args = []
        for k, kind in enumerate(kinds):
            if k:
                self.take("sym", ",")
            if kind == "int":
                args.append(self.signed_int())
            elif kind == "bound":
                args.append(self.bound())
            else:
                args.append(self.expr())
        if self.at("sym", ","):
            raise self.error(f"{name} takes {len(kinds)} argument(s)")
        self.take("sym", ")")
        return Call(name, tuple(args))

    def signed_int(self) -> int:
        if self.accept("sym", "("):
            n = self.signed_int()
            self.take("sym", ")")
            return n
        neg = self.accept("sym", "-")
        n = int(self.take("int").text)
        return -n if neg else n

    def rational(self) -> Fraction:
        neg = self.accept("sym", "-")
        q = Fraction(int(self.take("int").text))
        if self.accept("sym", "/"):
            tok = self.tok
            den = int(self.take("int").text)
            if den == 0:
                raise self.error("zero denominator", tok)
            q /= den
        return -q if neg else q

    def vector(self) -> Exponent:
        start = self.take("sym", "[")
        coords = [self.rational()]
        while self.accept("sym", ","):
            coords.append(self.rational())
        self.take("sym", "]")
        if not coords:
            raise self.error("empty exponent", start)
        return Exponent(coords)

    def monomial_exponent(self) -> Exponent:
        self.take("name", "t")
        if not self.accept("sym", "^"):
            return Exponent([1])
        if self.at("sym", "["):
            return self.vector()
        if self.accept("sym", "("):
            q = self.rational()
            self.take("sym", ")")
            return Exponent([q])
        neg = self.accept("sym", "-")
        q = Fraction(int(self.take("int").text))
        return Exponent([-q if neg else q])

    def bound(self) -> Bound:
        if self.at("sym", "["):
            return Bound(self.vector())
        if self.at("name", "t"):
            return Bound(self.monomial_exponent())
        raise self.error("expected a precision bound such as t^[3,0] or t^3")


def parse(text: str, allow_var: bool = False) -> Expr:
    """Parse ``text``; checks that all monomials share one depth."""
    e = _Parser(text, allow_var).parse()
    expr_depth(e)
    return e


def parse_poly(text: str) -> Expr:
    return parse(text, allow_var=True)


def _exponents(e: Expr):
    if isinstance(e, Mono) or isinstance(e, Bound):
        yield e.exponent
    elif isinstance(e, Neg):
        yield from _exponents(e.operand)
    elif isinstance(e, Bin):
        yield from _exponents(e.left)
        yield from _exponents(e.right)
    elif isinstance(e, Pow):
        yield from _exponents(e.base)
    elif isinstance(e, Mod):
        yield from _exponents(e.operand)
        yield e.bound.exponent
    elif isinstance(e, Call):
        for a in e.args:
            if not isinstance(a, int):
                yield from _exponents(a)


def expr_depth(e: Expr) -> Optional[int]:
    """Common depth of every exponent in ``e``; None if it has none."""
    depth = None
    for g in _exponents(e):
        if depth is None:
            depth = g.depth
        elif g.depth != depth:
            raise DepthMismatchError(
                f"inconsistent depth: exponent {g} has depth {g.depth}, expected {depth}"
            )
    return depth


# printing ------------------------------------------------------------------
_PREC = {"mod": 0, "+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _prec(e: Expr) -> int:
    if isinstance(e, Mod):
        return _PREC["mod"]
    if isinstance(e, Bin):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    if isinstance(e, (Pow, Mono)):
        return _PREC["^"]
    return _PREC["atom"]


def _wrap(e: Expr, need: bool) -> str:
    s = to_text(e)
    return f"({s})" if need else s


def to_text(e: Expr) -> str:
    """Print ``e`` so that ``parse(to_text(e)) == e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, (Mono, Bound)):
        return "t^" + str(e.exponent)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _prec(e.operand) < _PREC["neg"])
    if isinstance(e, Bin):
        p = _PREC[e.op]
        left = _wrap(e.left, _prec(e.left) < p)
        right = _wrap(e.right, _prec(e.right) <= p)
        return f"{left} {e.op} {right}" if p == 1 else f"{left}*{right}" if e.op == "*" else f"{left}/{right}"
    if isinstance(e, Pow):
        n = str(e.n) if e.n >= 0 else f"({e.n})"
        return _wrap(e.base, _prec(e.base) < _PREC["atom"]) + "^" + n
    if isinstance(e, Mod):
        return f"{_wrap(e.operand, _prec(e.operand) <= _PREC['mod'])} mod {to_text(e.bound)}"
    if isinstance(e, Call):
        return f"{e.name}(" + ", ".join(str(a) if isinstance(a, int) else to_text(a) for a in e.args) + ")"
    raise TypeError(f"not an expression node: {e!r}")
