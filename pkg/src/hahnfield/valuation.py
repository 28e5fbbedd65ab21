"""The canonical valuation, its coarsenings and the associated residue maps.

For the convex level ``j`` the coarsening ``w_j`` sends ``a`` to the image
of ``v(a)`` in G/Gamma_j.  Its residue field is again a series field, over
Gamma_j ~= Q^(d-j); the residue map keeps the terms whose exponent lies in
Gamma_j and drops the first ``j`` (zero) coordinates.  The valuation
induced on that residue field is the canonical one, so ``v`` decomposes as
``w_j`` followed by the residue valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, IndeterminateError
from .exponents import INF, Exponent, ValResult, check_level, lift, project, tail
from .series import Series

__all__ = [
    "CoarseValue",
    "val",
    "coarsen",
    "residue",
    "residue_constant",
    "compose_check",
    "density_gap",
]


@dataclass(frozen=True)
class CoarseValue:
    """The value ``w_j(a)``: an exponent of depth ``level`` or INF."""

    value: ValResult
    level: int

    def __str__(self):
        return str(self.value)


def val(a: Series) -> ValResult:
    """Minimum of the support; INF for the exact zero series."""
    if a.terms:
        return a.terms[0][0]
    if a.prec is None:
        return INF
    raise IndeterminateError(f"valuation unknown: series is O(t^{a.prec})")


def coarsen(a: Series, level: int) -> CoarseValue:
    check_level(level, a.depth)
    return CoarseValue(project(val(a), level), level)


def residue(a: Series, level: int) -> Series:
    """Residue of ``a`` under the coarsening at ``level``.

    Requires ``w(a) >= 0``.  A positive coarse value gives the exact zero of
    the residue field.  The result has depth ``d - level``.
    """
    d = a.depth
    check_level(level, d)
    rd = d - level
    zero = Exponent.zero(level)
    if not a.terms:
        if a.prec is None:
            return Series.zero(rd)
        if project(a.prec, level) > zero:
            # every unknown term has positive coarse value
            return Series.zero(rd)
        raise IndeterminateError(
            f"residue at level {level} unknown: series is O(t^{a.prec})"
        )
    cv = project(a.terms[0][0], level)
    if cv < zero:
        raise DomainError(
            f"{a} has coarse value {cv} < 0 at level {level}: outside the valuation ring"
        )
    if cv > zero:
        return Series.zero(rd)
    terms = [(tail(e, level), c) for e, c in a.terms if not any(e.coords[:level])]
    if a.prec is not None and project(a.prec, level) == zero:
        return Series(rd, terms, tail(a.prec, level))
    return Series(rd, terms)


def residue_constant(a: Series) -> Fraction:
    """Residue in the coefficient field Q (the finest level ``d``)."""
    r = residue(a, a.depth)
    if r.terms:
        return r.terms[0][1]
    if r.prec is None:
        return Fraction(0)
    raise IndeterminateError(f"constant coefficient of {a} is unknown")


def compose_check(a: Series, level: int) -> bool:
    """Check that ``w_level`` and the residue valuation recombine to ``v``.

    The coarse value is lifted back into G by zero padding, ``a`` is shifted
    by the inverse monic monomial, and the valuation of the residue of the
    shifted element supplies the remaining coordinates.
    """
    v = val(a)
    if v is INF:
        return False
    cv = coarsen(a, level).value
    shifted = a.shift(-lift(cv, a.depth))
    try:
        r = residue(shifted, level)
        rv = val(r)
    except (DomainError, IndeterminateError):
        return False
    if rv is INF:
        return False
    return Exponent(cv.coords + rv.coords) == v


def density_gap(a: Series, b: Series) -> ValResult:
    """``v(a - b)``; compare the result against a full or projected bound."""
    return val(a - b)
