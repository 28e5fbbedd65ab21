"""The value group G = Q^d under the lexicographic order.

Coordinate 0 is the most significant one.  The convex subgroups of G are
exactly the prefix kernels

    Gamma_j = {g in G : g_0 = ... = g_{j-1} = 0},   0 <= j <= d,

so Gamma_0 = G and Gamma_d = {0}.  A convex level is represented by the
plain integer ``j``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

from .errors import DepthMismatchError, DomainError

__all__ = [
    "Exponent",
    "Infinity",
    "INF",
    "ValResult",
    "exp_compare",
    "exp_add",
    "exp_neg",
    "exp_scale",
    "exp_div",
    "in_subgroup",
    "project",
    "tail",
    "lift",
    "archimedean_level",
    "check_level",
    "parse_exponent",
]


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("exponent coordinates must be exact rationals, not float")
    return Fraction(x)


def _approx(q: Fraction) -> float:
    """Correctly rounded float of ``q`` (clamped to +-inf), hence monotone in ``q``."""
    try:
        return q.numerator / q.denominator
    except OverflowError:
        return math.inf if q > 0 else -math.inf


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@total_ordering
class Infinity:
    """The value of zero: larger than every exponent, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hahnfield.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, (Exponent, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


class Exponent:
    """An element of Q^d with exact rational coordinates.

    Instances are immutable and hashable; ``<`` is the lexicographic order.
    Comparing or combining exponents of different depth raises
    :class:`DepthMismatchError`.
    """

    __slots__ = ("coords", "_hash", "_key")

    def __init__(self, coords: Iterable = ()):
        object.__setattr__(self, "coords", tuple(_rational(c) for c in coords))
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("Exponent is immutable")

    @classmethod
    def _make(cls, coords: tuple) -> "Exponent":
        # trusted fast path: coords are already Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "coords", coords)
        object.__setattr__(obj, "_hash", None)
        object.__setattr__(obj, "_key", None)
        return obj

    @property
    def sort_key(self) -> tuple:
        """A key ordering exponents exactly like ``<``, but cheap to compare.

        Rounding to float is monotone, so ``float(x) < float(y)`` implies
        ``x < y``; the exact coordinate only decides ties.
        """
        k = self._key
        if k is None:
            k = tuple([(_approx(q), q) for q in self.coords])
            object.__setattr__(self, "_key", k)
        return k

    @classmethod
    def zero(cls, depth: int) -> "Exponent":
        return cls((0,) * depth)

    @classmethod
    def unit(cls, depth: int, index: int) -> "Exponent":
        """The vector with a single 1 at (0-based) ``index``."""
        if not 0 <= index < depth:
            raise DomainError(f"unit index {index} out of range for depth {depth}")
        return cls(1 if i == index else 0 for i in range(depth))

    @property
    def depth(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "Exponent") -> None:
        if len(self.coords) != len(other.coords):
            raise DepthMismatchError(
                f"depth mismatch: {self} has depth {self.depth}, {other} has depth {other.depth}"
            )

    # ordering -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Exponent):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        # Fraction hashing is slow and exponents key every series dict
        # equal exponents have equal float approximations
        h = self._hash
        if h is None:
            h = hash(tuple([f for f, _ in self.sort_key]))
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other):
        if other is INF:
            return True
        if not isinstance(other, Exponent):
            return NotImplemented
        self._check(other)
        return self.coords < other.coords

    def __le__(self, other):
        if other is INF:
            return True
        if not isinstance(other, Exponent):
            return NotImplemented
        self._check(other)
        return self.coords <= other.coords

    def __gt__(self, other):
        if other is INF:
            return False
        if not isinstance(other, Exponent):
            return NotImplemented
        self._check(other)
        return self.coords > other.coords

    def __ge__(self, other):
        if other is INF:
            return False
        if not isinstance(other, Exponent):
            return NotImplemented
        self._check(other)
        return self.coords >= other.coords

    # group structure --------------------------------------------------------
    def __add__(self, other):
        if other is INF:
            return INF
        if not isinstance(other, Exponent):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            self._check(other)
        return Exponent._make(tuple([a + b for a, b in zip(self.coords, other.coords)]))

    def __sub__(self, other):
        if not isinstance(other, Exponent):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            self._check(other)
        return Exponent._make(tuple([a - b for a, b in zip(self.coords, other.coords)]))

    def __neg__(self):
        return Exponent._make(tuple([-a for a in self.coords]))

    def __mul__(self, n):
        if isinstance(n, int) and not isinstance(n, bool):
            return Exponent(a * n for a in self.coords)
        return NotImplemented

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"Exponent({str(self)})"

    def __str__(self):
        return "[" + ",".join(_fmt_rational(c) for c in self.coords) + "]"

    def __reduce__(self):
        return (Exponent, (self.coords,))


ValResult = Union[Exponent, Infinity]


def exp_compare(a: Exponent, b: Exponent) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if a.depth != b.depth:
        raise DepthMismatchError(f"cannot compare depth {a.depth} with depth {b.depth}")
    return (a.coords > b.coords) - (a.coords < b.coords)


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    return a + b


def exp_neg(a: Exponent) -> Exponent:
    return -a


def exp_scale(a: Exponent, n: int) -> Exponent:
    if n == 0:
        raise DomainError("scale factor must be a nonzero integer")
    return a * n


def exp_div(a: Exponent, n: int) -> Exponent:
    """Divide by a nonzero integer inside the divisible hull Q^d."""
    if n == 0:
        raise ZeroDivisionError("exponent division by zero")
    return Exponent(c / n for c in a.coords)


def check_level(j: int, depth: int) -> int:
    if not isinstance(j, int) or not 0 <= j <= depth:
        raise DomainError(f"convex level must satisfy 0 <= j <= {depth}, got {j!r}")
    return j


def in_subgroup(g: Exponent, j: int) -> bool:
    """Membership of ``g`` in Gamma_j (its first ``j`` coordinates vanish)."""
    check_level(j, g.depth)
    return not any(g.coords[:j])


def project(g: ValResult, j: int) -> ValResult:
    """Image of ``g`` in G/Gamma_j, represented by its first ``j`` coordinates."""
    if g is INF:
        return INF
    check_level(j, g.depth)
    return Exponent(g.coords[:j])


def tail(g: ValResult, j: int) -> ValResult:
    """Coordinates ``j..d-1``: the identification Gamma_j ~= Q^(d-j)."""
    if g is INF:
        return INF
    check_level(j, g.depth)
    return Exponent(g.coords[j:])


def lift(coarse: ValResult, depth: int) -> ValResult:
    """Zero-padding section G/Gamma_j -> G of :func:`project`."""
    if coarse is INF:
        return INF
    if coarse.depth > depth:
        raise DepthMismatchError(f"cannot lift depth {coarse.depth} into depth {depth}")
    return Exponent(coarse.coords + (Fraction(0),) * (depth - coarse.depth))


def archimedean_level(g: Exponent) -> int:
    """Index of the first nonzero coordinate; ``d`` for the zero vector.

    A nonzero ``g`` lies in Gamma_j minus Gamma_{j+1} exactly for
    ``j = archimedean_level(g)``.  Two positive exponents have comparable
    integer multiples iff they share this level.
    """
    for i, c in enumerate(g.coords):
        if c:
            return i
    return g.depth


_RATIONAL = r"[+-]?\s*\d+(?:\s*/\s*\d+)?"
_VECTOR_RE = re.compile(r"^\s*\[\s*(?:(%s)(?:\s*,\s*(%s))*)?\s*\]\s*$" % (_RATIONAL, _RATIONAL))


def parse_exponent(text: str) -> Exponent:
    """Parse the textual form ``[q1,...,qd]`` (a bare rational means depth 1)."""
    s = text.strip()
    if s.startswith("t^"):
        s = s[2:].strip()
    if s.startswith("["):
        if not _VECTOR_RE.match(s):
            raise DomainError(f"malformed exponent {text!r}")
        body = s.strip()[1:-1]
        parts = [p for p in body.split(",")] if body.strip() else []
        return Exponent(Fraction(p.replace(" ", "")) for p in parts)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        return Exponent([Fraction(s.replace(" ", ""))])
    except ValueError:
        raise DomainError(f"malformed exponent {text!r}") from None
