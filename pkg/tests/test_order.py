from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hahnfield import (
    DomainError,
    Exponent,
    IndeterminateError,
    IntegerPartElement,
    Series,
    Sign,
    chain_step,
    check_additive_complement,
    check_integer_part,
    check_r_gamma,
    check_weak_complement,
    compare,
    embdsrf_density,
    floor,
    floor_bijection_probe,
    in_integer_part,
    in_neg_ring,
    neg_part,
    quotient_field_witness,
    r_gamma_filter,
    shifted_floor,
    sign,
    val,
)
from hahnfield import sampling

import oracles
from strategies import exact_series


def S(d, terms, prec=None):
    return Series(d, [(Exponent(e if isinstance(e, tuple) else (e,)), c) for e, c in terms.items()], prec)


def test_sign_of_unknown_series():
    with pytest.raises(IndeterminateError):
        sign(Series.zero(1, Exponent([1])))


def test_infinitesimals_and_infinities():
    t = S(1, {1: 1})
    assert compare(t, Series.constant(Fraction(1, 10**9), 1)) == Sign.NEGATIVE
    assert compare(S(1, {-1: 1}), Series.constant(10**9, 1)) == Sign.POSITIVE
    # a level-0 infinitesimal is below every level-1 one
    assert compare(S(2, {(1, -50): 1}), S(2, {(0, 1): 1})) == Sign.NEGATIVE


def test_floor_undetermined_at_integer_boundary():
    with pytest.raises(IndeterminateError):
        floor(S(1, {0: 2}, Exponent([1])))


def test_floor_with_known_tail_at_boundary():
    assert floor(S(1, {0: 2, 3: 1}, Exponent([4]))).as_series() == Series.constant(2, 1)
    assert floor(S(1, {0: 2, 3: -1}, Exponent([4]))).as_series() == Series.constant(1, 1)


def test_integer_part_element_validation():
    with pytest.raises(DomainError):
        IntegerPartElement(S(1, {1: 1}), 0)


def test_membership():
    assert in_integer_part(S(1, {-2: Fraction(1, 3), 0: 4}))
    assert not in_integer_part(S(1, {0: Fraction(1, 2)}))
    assert in_neg_ring(S(1, {-1: 1}))
    assert not in_neg_ring(S(1, {-1: 1, 0: 1}))


def test_neg_part_requires_known_negative_support():
    with pytest.raises(IndeterminateError):
        neg_part(S(1, {-3: 1}, Exponent([-1])))


@given(st.integers(1, 3).flatmap(exact_series))
def test_floor_matches_search_oracle(a):
    r = floor(a).as_series()
    want = oracles.floor_by_search({e.coords: c for e, c in a.terms}, a.depth)
    assert {e.coords: c for e, c in r.terms} == want
    assert compare(r, a) <= 0 < compare(r + 1, a)


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(exact_series(d), exact_series(d))))
def test_order_is_compatible_with_field_operations(ab):
    a, b = ab
    one = Series.constant(1, a.depth)
    if sign(a) > 0 and sign(b) > 0:
        assert sign(a * b) > 0 and sign(a + b) > 0
    if a.terms and b.terms and sign(a) > 0 and compare(a, b) <= 0:
        assert val(a) >= val(b)
    assert compare(a + one, a) > 0


def test_checkers_pass_on_seeded_samples():
    rng = sampling.rng_for(7, "order-tests")
    field = [sampling.field_sample(rng, 2) for _ in range(60)]
    ring = [sampling.integer_part_sample(rng, 2) for _ in range(60)]
    neg = [sampling.integer_part_sample(rng, 2, with_const=False) for _ in range(60)]
    assert check_integer_part(field).passed
    assert check_weak_complement(ring, field).passed
    assert check_additive_complement(neg, field).passed


def test_checkers_report_witnesses():
    bad = S(1, {1: 1})
    rep = check_weak_complement([bad], [])
    assert not rep.passed and rep.failures[0]["witness"] == "t"
    rep = check_additive_complement([Series.constant(1, 1)], [])
    assert not rep.passed


def test_r_gamma_filter_and_closure():
    ring = [S(2, {(0, -1): 2}), S(2, {(-1, 0): 1}), Series.constant(3, 2)]
    kept = r_gamma_filter(ring, 1)
    assert S(2, {(-1, 0): 1}) not in kept and len(kept) == 2
    rep = check_r_gamma(ring, 1, [Exponent([0, -3])], [S(2, {(0, 0): 2, (1, 0): 1})])
    assert rep.passed, rep.failures


def test_embdsrf_preconditions():
    a = S(2, {(0, -1): 1})
    with pytest.raises(DomainError):
        embdsrf_density(a, Exponent([1, 0]), 1)
    with pytest.raises(DomainError):
        embdsrf_density(a, Exponent([0, -2]), 1)
    with pytest.raises(IndeterminateError):
        embdsrf_density(S(2, {(0, -1): 1}, Exponent([0, 2])), Exponent([0, 5]), 1)


def test_chain_and_quotient():
    assert chain_step(3, 0) == Exponent([0, 0, 1])
    assert chain_step(3, 2) == Exponent([1, 0, 0])
    a = S(3, {(0, 0, 2): 1, (0, 0, -1): 5})
    num, den = quotient_field_witness(a, 1)
    assert in_neg_ring(num) and in_neg_ring(den)
    assert num * den.invert() == a
    with pytest.raises(DomainError):
        quotient_field_witness(S(3, {(0, 1, 0): 1}), 1)
    with pytest.raises(IndeterminateError):
        quotient_field_witness(S(3, {(0, 0, 0): 1}, Exponent([0, 0, 1])), 1)


def test_floor_bijection_probe():
    rng = sampling.rng_for(3, "bijection")
    samples = [sampling.integer_part_sample(rng, 1) for _ in range(40)]
    fl2 = shifted_floor(S(1, {-1: 1}))
    rep = floor_bijection_probe(samples, floor, fl2)
    assert rep.passed, rep.failures
    # a monotone pair keeps its strict order
    a, b = Series.constant(1, 1), S(1, {-1: 1})
    assert compare(fl2(a).as_series(), fl2(b).as_series()) == compare(a, b)
