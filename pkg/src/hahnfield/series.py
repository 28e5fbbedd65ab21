"""Truncated generalized power series with exact rational coefficients.

A :class:`Series` is a finite, strictly increasing list of monomials
``c * t^g`` together with a precision ``prec``.  When ``prec`` is an
exponent ``pi`` every term at or beyond ``pi`` is *unknown* (not zero);
when ``prec`` is ``None`` the series is EXACT and equals its finite sum.

Precision propagation:

* sums keep ``min(prec_a, prec_b)`` (EXACT counts as +infinity);
* products keep ``min(prec_a + v(b), prec_b + v(a))``, where ``v`` of a
  series without known terms is its precision (a lower bound);
* the inverse keeps ``prec_a - 2 v(a)``; an EXACT multi-term input needs a
  caller-supplied target precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DepthMismatchError, DomainError, IndeterminateError, NonArchimedeanError
from .exponents import INF, Exponent, ValResult, _fmt_rational, archimedean_level, parse_exponent

__all__ = [
    "Series",
    "SupportProfile",
    "s_add",
    "s_neg",
    "s_sub",
    "s_mul",
    "s_invert",
    "leading",
    "truncate",
    "support_profile",
    "min_prec",
]

Prec = Optional[Exponent]

# Guard against runaway geometric expansions; the archimedean check makes
# every legitimate expansion finite well below this.
MAX_EXPANSION_STEPS = 100_000


def min_prec(a: Prec, b: Prec) -> Prec:
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, float):
        raise TypeError("coefficients must be exact rationals, not float")
    return Fraction(c)


class Series:
    """An element of Q((G)) known up to a precision bound.

    >>> t = Series.monomial(Exponent([1]))
    >>> str((1 + t).invert(Exponent([3])))
    '1 - t + t^2 mod t^3'
    """

    __slots__ = ("depth", "terms", "prec")

    def __init__(self, depth: int, terms: Iterable = (), prec: Prec = None):
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict[Exponent, Fraction] = {}
        for e, c in terms:
            if not isinstance(e, Exponent):
                e = Exponent(e)
            if e.depth != depth:
                raise DepthMismatchError(f"term exponent {e} does not have depth {depth}")
            acc[e] = acc.get(e, Fraction(0)) + _coerce_coeff(c)
        if prec is not None:
            if not isinstance(prec, Exponent):
                prec = Exponent(prec)
            if prec.depth != depth:
                raise DepthMismatchError(f"precision {prec} does not have depth {depth}")
        self._set(depth, _normalize(acc, prec), prec)

    def _set(self, depth, terms, prec):
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def _raw(cls, depth: int, terms: tuple, prec: Prec) -> "Series":
        obj = object.__new__(cls)
        obj._set(depth, terms, prec)
        return obj

    @classmethod
    def _from_dict(cls, depth: int, acc: dict, prec: Prec) -> "Series":
        return cls._raw(depth, _normalize(acc, prec), prec)

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, depth: int, prec: Prec = None) -> "Series":
        return cls(depth, (), prec)

    @classmethod
    def constant(cls, c, depth: int, prec: Prec = None) -> "Series":
        return cls(depth, [(Exponent.zero(depth), c)], prec)

    @classmethod
    def monomial(cls, exponent: Exponent, coeff=1, prec: Prec = None) -> "Series":
        return cls(exponent.depth, [(exponent, coeff)], prec)

    # basic queries ----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return not self.terms and self.prec is None

    def is_zero_mod_prec(self) -> bool:
        """True when no known term survives (exact zero or O(t^prec))."""
        return not self.terms

    def exponents(self) -> list[Exponent]:
        return [e for e, _ in self.terms]

    def coefficient(self, g: Exponent) -> Fraction:
        if self.prec is not None and g >= self.prec:
            raise IndeterminateError(f"coefficient at {g} lies beyond precision {self.prec}")
        for e, c in self.terms:
            if e == g:
                return c
        return Fraction(0)

    def val_lower_bound(self) -> ValResult:
        """The valuation if known; otherwise the precision, which bounds it from below."""
        if self.terms:
            return self.terms[0][0]
        return INF if self.prec is None else self.prec

    def _check(self, other: "Series") -> None:
        if self.depth != other.depth:
            raise DepthMismatchError(f"depth mismatch: {self.depth} vs {other.depth}")

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Series.constant(other, self.depth)
        return NotImplemented

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min_prec(self.prec, other.prec)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Series._from_dict(self.depth, acc, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.depth, tuple((e, -c) for e, c in self.terms), self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return Series.zero(a.depth)
        prec = None
        if a.prec is not None:
            prec = min_prec(prec, a.prec + b.val_lower_bound())
        if b.prec is not None:
            prec = min_prec(prec, b.prec + a.val_lower_bound())
        acc: dict[Exponent, Fraction] = {}
        make = Exponent._make
        bound = None if prec is None else prec.coords
        b_terms = [(e.coords, c) for e, c in b.terms]
        for e1, c1 in a.terms:
            x1 = e1.coords
            for x2, c2 in b_terms:
                xs = tuple([p + q for p, q in zip(x1, x2)])
                if bound is not None and xs >= bound:
                    # terms of b are increasing, so later ones are out of range too
                    break
                e = make(xs)
                acc[e] = acc.get(e, 0) + c1 * c2
        return Series._from_dict(a.depth, acc, prec)

    __rmul__ = __mul__

    def scale(self, c) -> "Series":
        c = _coerce_coeff(c)
        if c == 0:
            return Series.zero(self.depth)
        return Series._raw(self.depth, tuple((e, c * x) for e, x in self.terms), self.prec)

    def shift(self, g: Exponent) -> "Series":
        """Multiply by the monic monomial ``t^g``."""
        if g.depth != self.depth:
            raise DepthMismatchError(f"shift {g} does not have depth {self.depth}")
        prec = None if self.prec is None else self.prec + g
        return Series._raw(self.depth, tuple((e + g, c) for e, c in self.terms), prec)

    def leading(self) -> tuple[Exponent, Fraction]:
        if self.terms:
            return self.terms[0]
        if self.prec is None:
            raise DomainError("the zero series has no leading term")
        raise IndeterminateError(f"leading term unknown: series is O(t^{self.prec})")

    def invert(self, target: Prec = None) -> "Series":
        """Multiplicative inverse by geometric expansion around the leading term.

        ``target`` is the absolute precision used for an EXACT input with
        more than one term; for an inexact input it can only tighten the
        propagated bound ``prec - 2 v(a)``.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero series")
        h, c = self.leading()
        cinv = 1 / c
        if self.prec is not None:
            prec = self.prec - h - h
            if target is not None:
                prec = min_prec(prec, target)
        elif len(self.terms) == 1:
            return Series._raw(self.depth, ((-h, cinv),), None)
        else:
            if target is None:
                raise IndeterminateError(
                    "inverse of an exact series with several terms needs a target precision"
                )
            prec = target
        rel_prec = prec + h
        # a = c t^h (1 + eps); only the known part of eps (below rel_prec) matters
        neg_eps = [(e - h, -x * cinv) for e, x in self.terms[1:] if e - h < rel_prec]
        if rel_prec.is_zero() or rel_prec < Exponent.zero(self.depth):
            return Series.zero(self.depth, prec)
        level = archimedean_level(rel_prec)
        for e, _ in neg_eps:
            if archimedean_level(e) > level:
                raise NonArchimedeanError(
                    f"cannot invert {self}: correction t^{e} is infinitesimal relative to the "
                    f"precision bound t^{rel_prec}; the geometric series does not truncate"
                )
        total = _geometric(neg_eps, rel_prec)
        acc = {e - h: x * cinv for e, x in total.items()}
        return Series._from_dict(self.depth, acc, prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.invert()

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.invert(), -n
        result = Series.constant(1, self.depth)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, pi: Exponent) -> "Series":
        if pi.depth != self.depth:
            raise DepthMismatchError(f"truncation bound {pi} does not have depth {self.depth}")
        prec = min_prec(self.prec, pi)
        return Series._raw(self.depth, tuple((e, c) for e, c in self.terms if e < prec), prec)

    def with_prec(self, prec: Prec) -> "Series":
        """Reinterpret the known terms at another precision (dropping terms beyond it)."""
        return Series(self.depth, self.terms, prec)

    def agrees_with(self, other: "Series") -> bool:
        """Equality modulo the coarser of the two precisions."""
        return (self - other).is_zero_mod_prec()

    def support_profile(self) -> "SupportProfile":
        if self.terms:
            m: Optional[ValResult] = self.terms[0][0]
        else:
            m = INF if self.prec is None else None
        return SupportProfile(m, frozenset(archimedean_level(e) for e, _ in self.terms))

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Series):
            return (self.depth, self.terms, self.prec) == (other.depth, other.terms, other.prec)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Series.constant(other, self.depth)
        return NotImplemented

    def __hash__(self):
        return hash((self.depth, self.terms, self.prec))

    def __bool__(self):
        return not self.is_zero()

    # text / json -------------------------------------------------------------
    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"Series({format_series(self)!r}, depth={self.depth})"

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "terms": [[str(e), _fmt_rational(c)] for e, c in self.terms],
            "prec": None if self.prec is None else str(self.prec),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        prec = data.get("prec")
        return cls(
            data["depth"],
            [(parse_exponent(e), Fraction(c)) for e, c in data["terms"]],
            None if prec is None else parse_exponent(prec),
        )


def _normalize(acc: dict, prec: Prec) -> tuple:
    if prec is None:
        items = [(e, c) for e, c in acc.items() if c]
    else:
        bound = prec.coords
        items = [(e, c) for e, c in acc.items() if c and e.coords < bound]
    items.sort(key=lambda ec: ec[0].sort_key)
    return tuple(items)


def _geometric(neg_eps: list, bound: Exponent) -> dict:
    """Sum of ``(-eps)^i`` for i >= 0, keeping exponents strictly below ``bound``."""
    zero = Exponent.zero(bound.depth)
    total: dict[Exponent, Fraction] = {zero: Fraction(1)}
    power: dict[Exponent, Fraction] = {zero: Fraction(1)}
    steps = 0
    while power and neg_eps:
        nxt: dict[Exponent, Fraction] = {}
        for e1, c1 in power.items():
            for e2, c2 in neg_eps:
                e = e1 + e2
                if e < bound:
                    nxt[e] = nxt.get(e, 0) + c1 * c2
        power = {e: c for e, c in nxt.items() if c}
        for e, c in power.items():
            total[e] = total.get(e, 0) + c
        steps += 1
        if steps > MAX_EXPANSION_STEPS:
            raise NonArchimedeanError("geometric expansion did not terminate")
    return total


@dataclass(frozen=True)
class SupportProfile:
    """Minimum of the known support and the archimedean levels it meets.

    ``min_exponent`` is INF for the exact zero series and ``None`` when no
    term is known at a finite precision.  ``levels_touched`` holds each
    ``j`` such that some support exponent lies in Gamma_j minus
    Gamma_{j+1}; the zero exponent counts as level ``d``.
    """

    min_exponent: Optional[ValResult]
    levels_touched: frozenset


def _fmt_exponent_sugar(e: Exponent) -> str:
    if e.depth != 1:
        return "t^" + str(e)
    q = e.coords[0]
    if q == 1:
        return "t"
    if q.denominator == 1:
        return f"t^{q.numerator}"
    return f"t^({_fmt_rational(q)})"


def format_series(s: Series) -> str:
    """Canonical text: ascending monomials, then an optional ``mod t^pi``."""
    parts: list[str] = []
    for i, (e, c) in enumerate(s.terms):
        neg = c < 0
        a = -c if neg else c
        if e.is_zero():
            body = _fmt_rational(a)
        elif a == 1:
            body = _fmt_exponent_sugar(e)
        else:
            body = f"{_fmt_rational(a)}*{_fmt_exponent_sugar(e)}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    text = "".join(parts) if parts else "0"
    if s.prec is not None:
        text += " mod " + _fmt_exponent_sugar(s.prec)
    return text


# functional aliases -------------------------------------------------------------
def s_add(a: Series, b: Series) -> Series:
    return a + b


def s_neg(a: Series) -> Series:
    return -a


def s_sub(a: Series, b: Series) -> Series:
    return a - b


def s_mul(a: Series, b: Series) -> Series:
    return a * b


def s_invert(a: Series, target: Prec = None) -> Series:
    return a.invert(target)


def leading(a: Series) -> tuple[Exponent, Fraction]:
    return a.leading()


def truncate(a: Series, pi: Exponent) -> Series:
    return a.truncate(pi)


def support_profile(a: Series) -> SupportProfile:
    return a.support_profile()
