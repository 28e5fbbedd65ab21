"""Hypothesis strategies for exponents, series and expressions."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from hahnfield import Exponent, Series

coords = st.fractions(min_value=-6, max_value=6, max_denominator=6)
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=8).filter(bool)
depths = st.integers(min_value=1, max_value=3)


def exponents(depth: int):
    return st.tuples(*[coords] * depth).map(Exponent)


@st.composite
def positive_exponents(draw, depth: int):
    level = draw(st.integers(0, depth - 1))
    head = draw(st.fractions(min_value=Fraction(1, 6), max_value=6, max_denominator=6))
    rest = draw(st.tuples(*[coords] * (depth - level - 1)))
    return Exponent((0,) * level + (head,) + tuple(rest))


@st.composite
def exact_series(draw, depth: int, max_terms: int = 6):
    terms = draw(st.dictionaries(exponents(depth), coeffs, max_size=max_terms))
    return Series(depth, list(terms.items()))


@st.composite
def series(draw, depth: int, max_terms: int = 6):
    """Exact, or with precision strictly above every stored exponent."""
    s = draw(exact_series(depth, max_terms))
    if draw(st.booleans()):
        return s
    top = s.terms[-1][0] if s.terms else Exponent.zero(depth)
    return s.with_prec(top + draw(positive_exponents(depth)))


@st.composite
def depth_and(draw, strategy, **kw):
    d = draw(depths)
    return d, draw(strategy(d, **kw))


@st.composite
def one_units(draw, depth: int):
    """``1 + eps`` with every eps exponent positive at a single level."""
    level = draw(st.integers(0, depth - 1))
    heads = draw(st.lists(st.integers(1, 6), min_size=1, max_size=3, unique=True))
    terms = [(Exponent.zero(depth), Fraction(1))]
    for h in heads:
        rest = draw(st.tuples(*[coords] * (depth - level - 1)))
        terms.append((Exponent((0,) * level + (h,) + tuple(rest)), draw(coeffs)))
    return Series(depth, terms)
