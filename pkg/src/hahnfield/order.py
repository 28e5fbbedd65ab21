"""The ordering of Q((G)) compatible with v, integer parts and complements.

A series is positive iff its leading coefficient is; monomials ``t^g`` with
``g > 0`` are then positive infinitesimals and the valuation ring is convex.
The ring ``I = Q[G^{<0}] + Z`` of series with only negative exponents plus
an integer constant is an integer part; ``Q[G^{<0}]`` alone is an additive
complement of the valuation ring.

Checkers never raise on a failed axiom: they return a
:class:`ComplementReport` whose witnesses are printable series that can be
fed back through the expression evaluator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import DomainError, HahnfieldError, IndeterminateError
from .exponents import INF, Exponent, check_level, in_subgroup
from .series import Series
from .valuation import val

__all__ = [
    "Sign",
    "IntegerPartElement",
    "ComplementReport",
    "sign",
    "compare",
    "neg_part",
    "floor",
    "in_integer_part",
    "in_neg_ring",
    "check_integer_part",
    "check_weak_complement",
    "check_additive_complement",
    "r_gamma_filter",
    "check_r_gamma",
    "embdsrf_density",
    "EmbdsrfWitness",
    "quotient_field_witness",
    "chain_step",
    "floor_bijection_probe",
    "shifted_floor",
]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def sign(a: Series) -> Sign:
    if a.terms:
        return Sign.POSITIVE if a.terms[0][1] > 0 else Sign.NEGATIVE
    if a.prec is None:
        return Sign.ZERO
    raise IndeterminateError(f"sign undetermined: series is O(t^{a.prec})")


def compare(a: Series, b: Series) -> Sign:
    """Sign of ``a - b``."""
    return sign(a - b)


def neg_part(a: Series) -> Series:
    """The exact sub-series of negative exponents.

    Requires every negative-exponent term to be known, i.e. ``prec >= 0``.
    """
    zero = Exponent.zero(a.depth)
    if a.prec is not None and a.prec < zero:
        raise IndeterminateError(
            f"negative support of {a} is not fully known below precision {a.prec}"
        )
    return Series(a.depth, [(e, c) for e, c in a.terms if e < zero])


@dataclass(frozen=True)
class IntegerPartElement:
    """An element ``neg + const`` of I with ``neg`` in Q[G^{<0}]."""

    neg: Series
    const: int

    def __post_init__(self):
        if not in_neg_ring(self.neg):
            raise DomainError(f"{self.neg} is not an exact series with negative support")
        if not isinstance(self.const, int):
            raise DomainError(f"integer part constant must be an int, got {self.const!r}")

    @property
    def depth(self) -> int:
        return self.neg.depth

    def as_series(self) -> Series:
        return self.neg + self.const

    def __str__(self):
        return str(self.as_series())


def in_neg_ring(r: Series) -> bool:
    """Membership in Q[G^{<0}]: exact, all exponents strictly negative."""
    if r.prec is not None:
        return False
    zero = Exponent.zero(r.depth)
    return all(e < zero for e, _ in r.terms)


def in_integer_part(r: Series) -> bool:
    """Membership in I = Q[G^{<0}] + Z."""
    if r.prec is not None:
        return False
    zero = Exponent.zero(r.depth)
    for e, c in r.terms:
        if e > zero:
            return False
        if e == zero and c.denominator != 1:
            return False
    return True


def floor(a: Series) -> IntegerPartElement:
    """The unique ``r`` in I with ``r <= a < r + 1``.

    ``r`` is the negative part of ``a`` plus the integer floor of the
    constant coefficient, lowered by one when that coefficient is an integer
    and the strictly positive tail is negative.
    """
    neg = neg_part(a)
    zero = Exponent.zero(a.depth)
    if a.prec is not None and a.prec <= zero:
        raise IndeterminateError(f"constant coefficient of {a} lies beyond its precision")
    c0 = Fraction(0)
    tail_terms = []
    for e, c in a.terms:
        if e == zero:
            c0 = c
        elif e > zero:
            tail_terms.append((e, c))
    n = math.floor(c0)
    if c0.denominator == 1:
        if tail_terms:
            if tail_terms[0][1] < 0:
                n -= 1
        elif a.prec is not None:
            raise IndeterminateError(
                f"floor of {a} undetermined: integer constant and unknown tail sign"
            )
    return IntegerPartElement(neg, n)


@dataclass
class ComplementReport:
    """Outcome of one axiom check over a replayable sample set."""

    axiom: str
    samples: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, witness, reason: str) -> None:
        self.failures.append({"witness": str(witness), "reason": reason})

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "samples": self.samples,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _safe(report: ComplementReport, witness, fn: Callable[[], Optional[str]]) -> None:
    try:
        reason = fn()
    except HahnfieldError as exc:
        reason = f"{type(exc).__name__}: {exc}"
    if reason:
        report.fail(witness, reason)


def check_integer_part(samples: Sequence[Series]) -> ComplementReport:
    """Integer-part axioms for I on field samples.

    For each sample ``a``: ``r = floor(a)`` lies in I, ``r <= a < r + 1``,
    and neither neighbour ``r - 1`` nor ``r + 1`` satisfies the window.
    Elements of I are fixed by floor, and no sampled element of I lies
    strictly between 0 and 1.
    """
    report = ComplementReport("integer-part", len(samples))

    def in_window(r: Series, a: Series) -> bool:
        return compare(r, a) <= 0 and compare(a, r + 1) < 0

    def one(a: Series) -> Optional[str]:
        r = floor(a).as_series()
        if not in_integer_part(r):
            return f"floor {r} not in I"
        if not in_window(r, a):
            return f"r = {r} violates r <= a < r + 1"
        for other in (r - 1, r + 1):
            if in_window(other, a):
                return f"{other} also satisfies the window: floor not unique"
        if in_integer_part(a):
            if r != a:
                return f"floor moved an element of I to {r}"
            if sign(a) > 0 and compare(a, Series.constant(1, a.depth)) < 0:
                return "element of I strictly between 0 and 1"
        return None

    for a in samples:
        _safe(report, a, lambda a=a: one(a))
    return report


def check_weak_complement(
    ring_samples: Sequence[Series], field_samples: Sequence[Series]
) -> ComplementReport:
    """Weak-complement axioms for I: ``v(r) <= 0`` and ``v(a - floor(a)) >= 0``."""
    report = ComplementReport("weak-complement", len(ring_samples) + len(field_samples))
    for r in ring_samples:
        def ring_axiom(r=r):
            if not in_integer_part(r):
                return "ring sample is not in I"
            if r.is_zero():
                return None
            zero = Exponent.zero(r.depth)
            return None if val(r) <= zero else f"v(r) = {val(r)} > 0"
        _safe(report, r, ring_axiom)
    for a in field_samples:
        def field_axiom(a=a):
            r = floor(a).as_series()
            gap = (a - r).val_lower_bound()
            zero = Exponent.zero(a.depth)
            return None if gap >= zero else f"v(a - r) = {gap} < 0 for r = {r}"
        _safe(report, a, field_axiom)
    return report


def check_additive_complement(
    ring_samples: Sequence[Series], field_samples: Sequence[Series]
) -> ComplementReport:
    """Additive-complement axioms for Q[G^{<0}] against the valuation ring.

    Nonzero ring samples have negative value (trivial intersection with
    the valuation ring), and every field sample splits as
    ``neg_part(a) + rest`` with ``rest`` in the valuation ring.
    """
    report = ComplementReport("additive-complement", len(ring_samples) + len(field_samples))
    for r in ring_samples:
        def ring_axiom(r=r):
            if not in_neg_ring(r):
                return "ring sample is not in Q[G^<0]"
            if r.is_zero():
                return None
            zero = Exponent.zero(r.depth)
            return None if val(r) < zero else f"v(r) = {val(r)} >= 0: meets the valuation ring"
        _safe(report, r, ring_axiom)
    for a in field_samples:
        def field_axiom(a=a):
            b = neg_part(a)
            rest = a - b
            zero = Exponent.zero(a.depth)
            if not in_neg_ring(b):
                return f"negative part {b} not in Q[G^<0]"
            if rest.val_lower_bound() < zero:
                return f"remainder {rest} has negative value"
            if not (b + rest).agrees_with(a) or (b + rest).prec != a.prec:
                return "decomposition does not add back up"
            return None
        _safe(report, a, field_axiom)
    return report


def r_gamma_filter(ring_samples: Iterable[Series], level: int) -> list:
    """The samples ``r`` with ``v(r)`` in Gamma_level or ``r = 0``."""
    kept = []
    for r in ring_samples:
        check_level(level, r.depth)
        v = val(r)
        if v is INF or in_subgroup(v, level):
            kept.append(r)
    return kept


def check_r_gamma(
    ring_samples: Sequence[Series],
    level: int,
    gammas: Sequence[Exponent] = (),
    units: Sequence[Series] = (),
) -> ComplementReport:
    """Subring closure of R_Gamma and coverage of negative values of Gamma.

    Every pairwise sum, difference and product of filtered samples must
    stay in the filtered set.  For each negative ``gamma`` in Gamma, an
    element ``a = t^gamma * u`` (``u`` cycling through ``units``, which
    should have value 0) is approximated by its weak-complement witness
    ``r = floor(a)``; ``v(r)`` must equal ``gamma``, placing ``r`` in R_Gamma.
    """
    kept = r_gamma_filter(ring_samples, level)
    report = ComplementReport(f"r-gamma-closure(level={level})", len(kept) ** 2 + len(gammas))

    def member(x: Series) -> bool:
        if not in_integer_part(x):
            return False
        v = val(x)
        zero = Exponent.zero(x.depth)
        return v is INF or (in_subgroup(v, level) and v <= zero)

    for i, r in enumerate(kept):
        for s in kept[i:]:
            for name, x in (("sum", r + s), ("difference", r - s), ("product", r * s)):
                if not member(x):
                    report.fail(x, f"{name} of {r} and {s} leaves R_Gamma")
    for k, g in enumerate(gammas):
        def coverage(g=g, k=k):
            zero = Exponent.zero(g.depth)
            if not (in_subgroup(g, level) and g < zero):
                return f"gamma {g} is not a negative element of Gamma_{level}"
            a = Series.monomial(g)
            if units:
                a = a * units[k % len(units)]
            r = floor(a).as_series()
            if val(r) != g:
                return f"witness {r} has value {val(r)} instead of {g}"
            if not member(r):
                return f"witness {r} is not in R_Gamma"
            return None
        _safe(report, g, coverage)
    return report


@dataclass(frozen=True)
class EmbdsrfWitness:
    """The elements produced while approximating ``a`` from inside K_Gamma."""

    c: Series
    r: Series
    b: Series
    gap: object


def embdsrf_density(a: Series, gamma: Exponent, level: int) -> EmbdsrfWitness:
    """Approximate ``a`` to within ``gamma`` by an element with support in Gamma.

    Preconditions: ``v(a)`` and ``gamma`` lie in Gamma_level and
    ``gamma > max(0, v(a))``.  Takes ``c = t^-gamma`` (value ``-gamma``),
    the integer-part witness ``r = floor(a c)`` and returns ``b = r / c``,
    for which ``v(a - b) >= gamma``.
    """
    d = a.depth
    check_level(level, d)
    zero = Exponent.zero(d)
    va = val(a)
    if va is INF:
        raise DomainError("cannot approximate the zero series: v(a) is not in Gamma")
    if not in_subgroup(va, level):
        raise DomainError(f"v(a) = {va} is not in Gamma_{level}")
    if not in_subgroup(gamma, level):
        raise DomainError(f"gamma = {gamma} is not in Gamma_{level}")
    if not (gamma > zero and gamma > va):
        raise DomainError(f"need gamma > 0 and gamma > v(a); got gamma = {gamma}, v(a) = {va}")
    if a.prec is not None and not a.prec > gamma:
        raise IndeterminateError(
            f"precision {a.prec} of a is insufficient for the bound {gamma}"
        )
    c = Series.monomial(-gamma)
    ac = a * c
    try:
        r = floor(ac).as_series()
    except IndeterminateError as exc:
        raise IndeterminateError(f"insufficient precision for the witness of a*c: {exc}") from exc
    b = r * c.invert()
    diff = a - b
    gap = INF if diff.is_zero() else diff.val_lower_bound()
    return EmbdsrfWitness(c, r, b, gap)


def chain_step(depth: int, nu: int) -> Exponent:
    """Canonical positive element of C_{nu+1} minus C_nu, where C_i = Gamma_{d-i}."""
    if not 0 <= nu < depth:
        raise DomainError(f"chain level must satisfy 0 <= nu < {depth}, got {nu}")
    return Exponent.unit(depth, depth - nu - 1)


def quotient_field_witness(a: Series, nu: int) -> tuple[Series, Series]:
    """Write ``a`` in k((C_nu)) as a quotient of two series with negative support.

    Returns ``(a * t^alpha, t^alpha)`` for the negative ``alpha`` in
    C_{nu+1} minus C_nu given by :func:`chain_step`; both parts have only
    negative exponents because ``alpha`` lies below all of C_nu.
    """
    d = a.depth
    if a.prec is not None:
        raise IndeterminateError("the full support of a must be known (exact series required)")
    alpha = -chain_step(d, nu)
    for e, _ in a.terms:
        if not in_subgroup(e, d - nu):
            raise DomainError(f"support exponent {e} lies outside the chain member C_{nu}")
    return a.shift(alpha), Series.monomial(alpha)


def shifted_floor(s: Series) -> Callable[[Series], IntegerPartElement]:
    """Floor for the presentation ``I + s`` of the same integer part (``s`` in I)."""
    if not in_integer_part(s):
        raise DomainError(f"shift {s} is not an element of I")

    def fl(a: Series) -> IntegerPartElement:
        r = floor(a - s).as_series() + s
        zero = Exponent.zero(r.depth)
        return IntegerPartElement(
            Series(r.depth, [(e, c) for e, c in r.terms if e < zero]), int(r.coefficient(zero))
        )

    return fl


def floor_bijection_probe(
    samples: Sequence[Series],
    floor1: Callable[[Series], IntegerPartElement],
    floor2: Callable[[Series], IntegerPartElement],
) -> ComplementReport:
    """Probe the order isomorphism between two integer parts.

    Samples are elements of the first integer part.  Each ``a`` is sent to
    ``a' = floor2(a)``; the map must be injective and strictly order
    preserving on the samples, and the back construction ``a''`` (the
    element of the first part with ``a'' < a' <= a'' + 1``) must satisfy
    ``a'' + 1 = a``.
    """
    report = ComplementReport("floor-bijection", len(samples))
    images = []
    for a in samples:
        def forward(a=a):
            ap = floor2(a).as_series()
            images.append((a, ap))
            f = floor1(ap).as_series()
            back = f - 1 if f == ap else f
            if back + 1 != a:
                return f"back construction gives {back} + 1 != a for image {ap}"
            return None
        _safe(report, a, forward)
    images.sort(key=lambda pair: _SortKey(pair[0]))
    for (a, ap), (b, bp) in zip(images, images[1:]):
        order = compare(a, b)
        if order == 0:
            continue
        if compare(ap, bp) != order:
            report.fail(b, f"map not strictly order preserving between {a} and {b}")
    return report


class _SortKey:
    __slots__ = ("s",)

    def __init__(self, s: Series):
        self.s = s

    def __lt__(self, other: "_SortKey") -> bool:
        return compare(self.s, other.s) < 0
