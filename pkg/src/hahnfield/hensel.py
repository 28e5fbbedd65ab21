"""Hensel lifting of simple residue roots by Newton iteration.

Residue characteristic is 0 (coefficients are rationals), so every simple
root of the reduced polynomial lifts uniquely.  Newton's method doubles
the value of ``f(z)`` at each step as long as that value stays in the same
archimedean class as the target; a target that no finite number of
doublings can reach is reported instead of looped on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DepthMismatchError, DomainError, IndeterminateError, NonArchimedeanError
from .exponents import INF, Exponent, ValResult, archimedean_level, exp_div
from .series import Series
from .valuation import residue_constant, val

__all__ = [
    "Poly",
    "LiftResult",
    "poly_eval",
    "poly_derive",
    "hensel_lift",
    "unit_root",
    "series_root",
    "root_value",
    "in_cyclic_subgroup",
    "rational_root",
]

MAX_NEWTON_STEPS = 64


class Poly:
    """Univariate polynomial with series coefficients, lowest degree first."""

    __slots__ = ("coeffs", "depth")

    def __init__(self, coeffs: Sequence[Series], depth: int | None = None):
        cs = list(coeffs)
        if depth is None:
            if not cs:
                raise DomainError("cannot infer the depth of an empty polynomial")
            depth = cs[0].depth
        for c in cs:
            if c.depth != depth:
                raise DepthMismatchError(f"coefficient {c} does not have depth {depth}")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.depth = depth

    @classmethod
    def x(cls, depth: int) -> "Poly":
        return cls([Series.zero(depth), Series.constant(1, depth)], depth)

    @classmethod
    def const(cls, s: Series) -> "Poly":
        return cls([s], s.depth)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.depth != self.depth:
                raise DepthMismatchError(f"depth mismatch: {self.depth} vs {other.depth}")
            return other
        if isinstance(other, Series):
            return Poly.const(other) if other.depth == self.depth else _raise_depth(self, other)
        if isinstance(other, (int, Fraction)):
            return Poly.const(Series.constant(other, self.depth))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        zero = Series.zero(self.depth)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.depth)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.depth)

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
        if not self.coeffs or not other.coeffs:
            return Poly([], self.depth)
        out = [Series.zero(self.depth)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.depth)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomials only take non-negative integer powers")
        result = Poly.const(Series.constant(1, self.depth))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.depth == other.depth and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.depth, self.coeffs))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            x = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            cs = str(c)
            if not x:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(x)
            else:
                parts.append(f"({cs})*{x}")
        return " + ".join(reversed(parts)) if parts else "0"

    def __repr__(self):
        return f"Poly({self})"


def _raise_depth(p: Poly, s: Series):
    raise DepthMismatchError(f"depth mismatch: polynomial depth {p.depth}, series depth {s.depth}")


def poly_eval(f: Poly, z: Series) -> Series:
    """Horner evaluation; precision follows the series rules."""
    if z.depth != f.depth:
        raise DepthMismatchError(f"cannot evaluate a depth-{f.depth} polynomial at depth {z.depth}")
    acc = Series.zero(f.depth)
    for c in reversed(f.coeffs):
        acc = acc * z + c
    return acc


def poly_derive(f: Poly) -> Poly:
    return Poly([c * i for i, c in enumerate(f.coeffs)][1:], f.depth)


@dataclass(frozen=True)
class LiftResult:
    root: Series
    iterations: int
    achieved: ValResult
    history: tuple = ()


def _reached(v: ValResult, target: Exponent) -> bool:
    return v is INF or v >= target


def hensel_lift(
    f: Poly, zeta, target: Exponent, start: Series | None = None
) -> LiftResult:
    """Lift the simple residue root ``zeta`` of ``f`` to a root modulo ``t^target``.

    Iterates ``z <- z - f(z)/f'(z)`` from ``z0 = zeta`` (or ``start``, which
    must reduce to ``zeta``) until ``v(f(z)) >= target``.  ``history`` records
    the value of ``f(z_k)`` before each step.
    """
    zeta = Fraction(zeta)
    d = f.depth
    if target.depth != d:
        raise DepthMismatchError(f"target {target} does not have depth {d}")
    zero = Exponent.zero(d)
    if not target > zero:
        raise DomainError(f"target precision must be positive, got {target}")
    for c in f.coeffs:
        if c.val_lower_bound() < zero:
            raise DomainError(f"coefficient {c} is not integral: polynomial not over the valuation ring")
    g = [residue_constant(c) for c in f.coeffs]
    g_at = sum(c * zeta**i for i, c in enumerate(g))
    dg_at = sum(i * c * zeta ** (i - 1) for i, c in enumerate(g) if i)
    if g_at != 0:
        raise DomainError(f"{zeta} is not a root of the residue polynomial")
    if dg_at == 0:
        raise DomainError(f"{zeta} is not a simple root of the residue polynomial")

    df = poly_derive(f)
    if start is None:
        z = Series.constant(zeta, d)
    else:
        if start.val_lower_bound() < zero or residue_constant(start) != zeta:
            raise DomainError(f"start value {start} does not reduce to {zeta}")
        z = start
    history = []
    steps = 0
    while True:
        fz = poly_eval(f, z)
        v = fz.val_lower_bound()
        history.append(v)
        if _reached(v, target):
            return LiftResult(z, steps, v, tuple(history))
        if not fz.terms:
            raise IndeterminateError(
                f"precision exhausted: f(z) is only known modulo t^{fz.prec}, target t^{target}"
            )
        if archimedean_level(v) > archimedean_level(target):
            raise NonArchimedeanError(
                f"v(f(z)) = {v} is infinitesimal relative to the target {target}; "
                "Newton steps cannot reach it"
            )
        if steps >= MAX_NEWTON_STEPS:
            raise NonArchimedeanError("Newton iteration did not reach the target")
        dfz = poly_eval(df, z)
        # f'(z) is a unit; its inverse is only needed modulo the target
        delta = fz * dfz.invert(target)
        z = (z - delta).truncate(target)
        steps += 1


def unit_root(u: Series, q: int, target: Exponent) -> Series:
    """The q-th root of the 1-unit ``u`` that reduces to 1, modulo ``t^target``."""
    if not isinstance(q, int) or q < 1:
        raise DomainError(f"root index must be a positive integer, got {q!r}")
    zero = Exponent.zero(u.depth)
    try:
        ok = val(u) == zero and residue_constant(u) == 1
    except IndeterminateError:
        ok = False
    if not ok:
        raise DomainError(f"{u} is not a 1-unit (value 0, residue 1)")
    if q == 1:
        return u
    X = Poly.x(u.depth)
    f = X**q - u
    return hensel_lift(f, 1, target).root


def rational_root(c: Fraction, q: int) -> Fraction:
    """The rational q-th root of ``c`` (positive for even q), if there is one."""
    c = Fraction(c)
    if c < 0 and q % 2 == 0:
        raise DomainError(f"{c} has no real root of index {q}")
    s = -1 if c < 0 else 1
    num = _int_root(abs(c.numerator), q)
    den = _int_root(c.denominator, q)
    if num is None or den is None:
        raise DomainError(f"{c} has no rational root of index {q}")
    return s * Fraction(num, den)


def _int_root(n: int, q: int):
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / q))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**q == n:
            return cand
    # large integers: exact integer Newton iteration
    x = 1 << ((n.bit_length() + q - 1) // q)
    while True:
        y = ((q - 1) * x + n // x ** (q - 1)) // q
        if y >= x:
            break
        x = y
    return x if x**q == n else None


def series_root(a: Series, q: int, target: Exponent) -> Series:
    """A q-th root of ``a = c t^h (1 + eps)`` as ``c^(1/q) t^(h/q) (1 + eps)^(1/q)``.

    The leading coefficient must have a rational q-th root; the leading
    exponent is divided inside the divisible group Q^d.
    """
    h, c = a.leading()
    cr = rational_root(c, q)
    h_q = exp_div(h, q)
    unit = a.shift(-h) * (1 / c)
    # the unit part is needed modulo target - h/q so the product lands at target
    rel = target - h_q
    if unit.prec is not None and unit.prec < rel:
        rel = unit.prec
    root = unit_root(unit, q, rel) if q > 1 else unit
    return root.shift(h_q) * cr


def root_value(y_val: Exponent, q: int) -> Exponent:
    """Value of any q-th root of an element of value ``y_val``."""
    if not isinstance(q, int) or q < 1:
        raise DomainError(f"root index must be a positive integer, got {q!r}")
    return exp_div(y_val, q)


def in_cyclic_subgroup(g: Exponent, generator: Exponent) -> bool:
    """Whether ``g = n * generator`` for some integer ``n``."""
    if g.depth != generator.depth:
        raise DepthMismatchError(f"depth mismatch: {g.depth} vs {generator.depth}")
    if generator.is_zero():
        return g.is_zero()
    ratio = None
    for a, b in zip(g.coords, generator.coords):
        if b == 0:
            if a != 0:
                return False
            continue
        r = a / b
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return ratio is not None and ratio.denominator == 1
