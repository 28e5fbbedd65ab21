"""Seeded, bounded random generators for series, exponents and ring elements.

Every generator takes a ``random.Random`` so runs replay exactly.  Term
counts stay at most ``MAX_TERMS`` and numerators/denominators at most
``MAX_HEIGHT``.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .exponents import Exponent
from .series import Series

MAX_TERMS = 12
MAX_HEIGHT = 16
SEED_ENV = "HAHNFIELD_SEED"


def resolve_seed(seed: int | None, default: int = 0) -> int:
    """Explicit seed, else ``$HAHNFIELD_SEED``, else ``default``."""
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        return int(env)
    return default


def rng_for(seed: int, *salt) -> random.Random:
    # string seeds hash deterministically (not via PYTHONHASHSEED)
    return random.Random(":".join(str(x) for x in (seed,) + salt))


def rational(rng: random.Random, height: int = MAX_HEIGHT, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


def coord(rng: random.Random, denom_max: int = MAX_HEIGHT, height: int = MAX_HEIGHT) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, denom_max))


def exponent(rng: random.Random, depth: int, denom_max: int = MAX_HEIGHT) -> Exponent:
    return Exponent(coord(rng, denom_max) for _ in range(depth))


def level_exponent(rng: random.Random, depth: int, level: int, lo=1, hi=MAX_HEIGHT,
                   denom_max: int = MAX_HEIGHT) -> Exponent:
    """A positive exponent whose first nonzero coordinate sits at ``level``."""
    head = Fraction(rng.randint(lo, hi), rng.randint(1, denom_max))
    rest = [coord(rng, denom_max) for _ in range(depth - level - 1)]
    return Exponent([0] * level + [head] + rest)


def series(rng: random.Random, depth: int, max_terms: int = MAX_TERMS,
           exact_ratio: float = 0.3, denom_max: int = MAX_HEIGHT) -> Series:
    """A general series; finite precision sits above every stored exponent."""
    n = rng.randint(0, max_terms)
    exps = sorted({exponent(rng, depth, denom_max) for _ in range(n)})
    terms = [(e, rational(rng)) for e in exps]
    if rng.random() < exact_ratio:
        return Series(depth, terms)
    top = exps[-1] if exps else Exponent.zero(depth)
    bump = level_exponent(rng, depth, rng.randrange(depth), denom_max=denom_max)
    return Series(depth, terms, top + bump)


def unit_like(rng: random.Random, depth: int, max_terms: int = MAX_TERMS,
              exact: bool = False, denom_max: int = MAX_HEIGHT) -> Series:
    """``c t^h (1 + eps)`` that inverts in finitely many steps.

    All terms of ``eps`` and the relative precision share one archimedean
    level, so the geometric expansion reaches the precision bound.  The
    relative precision stays below three times the smallest ``eps`` head,
    which keeps the expansion to a few powers.
    """
    lvl = rng.randrange(depth)
    h = exponent(rng, depth, denom_max)
    c = rational(rng)
    den = rng.randint(1, denom_max)
    base = rng.randint(1, MAX_HEIGHT // 2)
    n = rng.randint(0, max_terms - 1)

    def eps_exp(num):
        rest = [coord(rng, denom_max) for _ in range(depth - lvl - 1)]
        return Exponent([0] * lvl + [Fraction(num, den)] + rest)

    eps = sorted({eps_exp(rng.randint(base, 2 * base)) for _ in range(n)})
    terms = [(h, c)] + [(h + e, rational(rng)) for e in eps]
    if exact:
        return Series(depth, terms)
    top = max((int(e.coords[lvl] * den) for e in eps), default=base - 1)
    rel = eps_exp(top + rng.randint(1, base))
    return Series(depth, terms, h + rel)


def relative_target(rng: random.Random, a: Series) -> Exponent:
    """A target for inverting an exact ``unit_like`` sample, same budget."""
    h = a.terms[0][0]
    d = a.depth
    if len(a.terms) == 1:
        return -h + level_exponent(rng, d, rng.randrange(d))
    first = a.terms[1][0] - h
    lvl = next(i for i, c in enumerate(first.coords) if c)
    top = max((e - h).coords[lvl] for e, _ in a.terms[1:])
    head = top + first.coords[lvl] * Fraction(rng.randint(1, 8), 8)
    rest = [coord(rng) for _ in range(d - lvl - 1)]
    return -h + Exponent([0] * lvl + [head] + rest)


def psf_series(rng: random.Random, n_max: int, max_terms: int = MAX_TERMS,
               height: int = MAX_HEIGHT) -> Series:
    """An element of Q((t^(1/n))) for some ``n <= n_max`` (depth 1).

    The sample always admits a floor: when the constant coefficient is an
    integer and no positive term is known, the series is made exact.
    """
    n = rng.randint(1, n_max)
    count = rng.randint(0, max_terms)
    exps = sorted({Fraction(rng.randint(-height, height), n) for _ in range(count)})
    terms = [(Exponent([e]), rational(rng, height)) for e in exps]
    s = Series(1, terms)
    if rng.random() < 0.3:
        return s
    top = exps[-1] if exps and exps[-1] > 0 else Fraction(0)
    prec = Exponent([top + Fraction(rng.randint(1, height), n)])
    bounded = Series(1, terms, prec)
    const = dict(terms).get(Exponent([0]), Fraction(0))
    has_pos = any(e > 0 for e in exps)
    if const.denominator == 1 and not has_pos:
        return s
    return bounded


def field_sample(rng: random.Random, depth: int, max_terms: int = MAX_TERMS,
                 denom_max: int = MAX_HEIGHT) -> Series:
    """A general series that admits a floor.

    Finite precision lies above 0 and above every stored exponent; an
    integer constant with no known positive term forces an exact series.
    """
    s = series(rng, depth, max_terms, denom_max=denom_max)
    zero = Exponent.zero(depth)
    if s.prec is None:
        return s
    prec = s.prec
    if not prec > zero:
        prec = level_exponent(rng, depth, rng.randrange(depth), denom_max=denom_max)
    c0 = next((c for e, c in s.terms if e == zero), Fraction(0))
    if c0.denominator == 1 and not any(e > zero for e, _ in s.terms):
        return Series(depth, s.terms)
    return Series(depth, s.terms, prec)


def neg_monomial(rng: random.Random, depth: int, denom_max: int = MAX_HEIGHT,
                 level: int = 0) -> Series:
    """``c t^g`` with ``g < 0`` in Gamma_level."""
    while True:
        g = Exponent([0] * level + [coord(rng, denom_max) for _ in range(depth - level)])
        if g < Exponent.zero(depth):
            return Series.monomial(g, rational(rng))


def integer_part_sample(rng: random.Random, depth: int, denom_max: int = MAX_HEIGHT,
                        with_const: bool = True, level: int = 0) -> Series:
    """Monomials ``c t^g`` with ``g < 0``, integers, and one round of sums/products.

    With ``level > 0`` the monomials are drawn from Gamma_level only.
    """
    def gen():
        if with_const and rng.random() < 0.25:
            return Series.constant(rng.randint(-MAX_HEIGHT, MAX_HEIGHT), depth)
        return neg_monomial(rng, depth, denom_max, level)

    kind = rng.randrange(3)
    if kind == 0:
        return gen()
    x, y = gen(), gen()
    return x + y if kind == 1 else x * y
