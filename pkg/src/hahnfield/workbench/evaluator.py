"""Evaluation of parsed expressions against a depth and default precision."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from ..errors import DepthMismatchError, DomainError, HahnfieldError
from ..exponents import INF, Exponent, Infinity, parse_exponent
from ..hensel import Poly, series_root
from ..order import floor
from ..series import Series, format_series
from ..valuation import coarsen, residue, val
from .parser import Bin, Bound, Call, Expr, Mod, Mono, Neg, Num, Pow, Var, expr_depth, parse, parse_poly, to_text

__all__ = [
    "EvalContext",
    "DEFAULT_PREC_COORD",
    "evaluate",
    "eval_expr",
    "eval_poly",
    "evaluate_poly",
    "format_value",
    "parse_series",
    "parse_bound",
]

DEFAULT_PREC_COORD = 8

Value = Union[Series, Exponent, Infinity]


@dataclass(frozen=True)
class EvalContext:
    """Depth of the value group and the horizon used for exact divisions."""

    depth: int
    prec: Exponent

    @classmethod
    def make(cls, depth: int, prec: Optional[Exponent] = None) -> "EvalContext":
        if depth < 1:
            raise DomainError(f"depth must be positive, got {depth}")
        if prec is None:
            prec = Exponent([DEFAULT_PREC_COORD] * depth)
        if prec.depth != depth:
            raise DepthMismatchError(f"precision {prec} does not have depth {depth}")
        return cls(depth, prec)

    @classmethod
    def for_expr(cls, e: Expr, depth: Optional[int] = None, prec: Optional[Exponent] = None) -> "EvalContext":
        inferred = expr_depth(e)
        if depth is None:
            depth = inferred or (prec.depth if prec is not None else 1)
        elif inferred is not None and inferred != depth:
            raise DepthMismatchError(f"expression has depth {inferred}, context depth is {depth}")
        return cls.make(depth, prec)


def _with_context(exc: Exception, node: Expr) -> Exception:
    if getattr(exc, "expr_context", None) is not None:
        return exc
    text = to_text(node)
    try:
        new = type(exc)(f"{exc} [in {text}]")
    except TypeError:
        return exc
    new.expr_context = text
    return new


def _series(v: Value, node: Expr) -> Series:
    if not isinstance(v, Series):
        raise DomainError(f"{to_text(node)} is a value-group element, not a series")
    return v


def _divide(num: Series, den: Series, ctx: EvalContext) -> Series:
    if den.is_exact and len(den.terms) > 1:
        return num * den.invert(ctx.prec)
    return num * den.invert()


def _pow(base: Series, n: int, ctx: EvalContext) -> Series:
    if n >= 0:
        return base**n
    if base.is_exact and len(base.terms) > 1:
        return base.invert(ctx.prec) ** (-n)
    return base ** n


def eval_expr(e: Expr, ctx: EvalContext) -> Value:
    try:
        return _eval(e, ctx)
    except (HahnfieldError, ZeroDivisionError) as exc:
        raise _with_context(exc, e) from exc


def _eval(e: Expr, ctx: EvalContext) -> Value:
    d = ctx.depth
    if isinstance(e, Num):
        return Series.constant(e.value, d)
    if isinstance(e, Mono):
        if e.exponent.depth != d:
            raise DepthMismatchError(f"monomial t^{e.exponent} does not have depth {d}")
        return Series.monomial(e.exponent)
    if isinstance(e, Var):
        raise DomainError("the variable X is only meaningful in a polynomial")
    if isinstance(e, Bound):
        raise DomainError("a precision bound is not a value")
    if isinstance(e, Neg):
        return -_series(eval_expr(e.operand, ctx), e.operand)
    if isinstance(e, Bin):
        a = _series(eval_expr(e.left, ctx), e.left)
        b = _series(eval_expr(e.right, ctx), e.right)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return _divide(a, b, ctx)
    if isinstance(e, Pow):
        return _pow(_series(eval_expr(e.base, ctx), e.base), e.n, ctx)
    if isinstance(e, Mod):
        bound = e.bound.exponent
        inner = replace(ctx, prec=bound)
        return _series(eval_expr(e.operand, inner), e.operand).truncate(bound)
    if isinstance(e, Call):
        return _call(e, ctx)
    raise TypeError(f"not an expression node: {e!r}")


def _call(e: Call, ctx: EvalContext) -> Value:
    name, args = e.name, e.args
    if name == "truncate":
        return _series(eval_expr(args[0], ctx), args[0]).truncate(args[1].exponent)
    if name in ("floor", "val"):
        a = _series(eval_expr(args[0], ctx), args[0])
        return floor(a).as_series() if name == "floor" else val(a)
    level_or_q, sub = args
    a = _series(eval_expr(sub, ctx), sub)
    if name == "root":
        return series_root(a, level_or_q, ctx.prec)
    if name == "res":
        return residue(a, level_or_q)
    if name == "coarsen":
        return coarsen(a, level_or_q).value
    raise DomainError(f"unknown function {name}")


def _has_var(e) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return _has_var(e.operand)
    if isinstance(e, Bin):
        return _has_var(e.left) or _has_var(e.right)
    if isinstance(e, Pow):
        return _has_var(e.base)
    if isinstance(e, Mod):
        return _has_var(e.operand)
    if isinstance(e, Call):
        return any(not isinstance(a, int) and _has_var(a) for a in e.args)
    return False


def eval_poly(e: Expr, ctx: EvalContext) -> Poly:
    """Evaluate an expression in X to a polynomial with series coefficients."""
    d = ctx.depth
    if not _has_var(e):
        return Poly.const(_series(eval_expr(e, ctx), e))
    if isinstance(e, Var):
        return Poly.x(d)
    if isinstance(e, Neg):
        return -eval_poly(e.operand, ctx)
    if isinstance(e, Bin):
        left = eval_poly(e.left, ctx)
        if e.op == "/":
            if _has_var(e.right):
                raise DomainError("cannot divide by a polynomial in X")
            den = _series(eval_expr(e.right, ctx), e.right)
            inv = _divide(Series.constant(1, d), den, ctx)
            return left * inv
        right = eval_poly(e.right, ctx)
        return {"+": left.__add__, "-": left.__sub__, "*": left.__mul__}[e.op](right)
    if isinstance(e, Pow):
        return eval_poly(e.base, ctx) ** e.n
    if isinstance(e, Mod):
        p = eval_poly(e.operand, replace(ctx, prec=e.bound.exponent))
        return Poly([c.truncate(e.bound.exponent) for c in p.coeffs], d)
    raise DomainError(f"{to_text(e)}: functions cannot be applied to X")


def parse_bound(text: str, depth: Optional[int] = None) -> Exponent:
    """Read ``t^[..]``, ``t^3``, ``[..]`` or a bare rational as an exponent."""
    s = text.strip()
    g = parse_exponent("t^1" if s == "t" else s)
    if depth is not None and g.depth != depth:
        raise DepthMismatchError(f"exponent {g} does not have depth {depth}")
    return g


def evaluate(text: str, depth: Optional[int] = None, prec: Optional[Exponent] = None) -> Value:
    e = parse(text)
    return eval_expr(e, EvalContext.for_expr(e, depth, prec))


def evaluate_poly(text: str, depth: Optional[int] = None, prec: Optional[Exponent] = None) -> Poly:
    e = parse_poly(text)
    return eval_poly(e, EvalContext.for_expr(e, depth, prec))


def parse_series(text: str, depth: Optional[int] = None, prec: Optional[Exponent] = None) -> Series:
    v = evaluate(text, depth, prec)
    if not isinstance(v, Series):
        raise DomainError(f"{text!r} does not denote a series")
    return v


def format_value(v: Value) -> str:
    if v is INF:
        return "inf"
    if isinstance(v, Exponent):
        return str(v)
    return format_series(v)
