"""Scenario runners that replay the explicit constructions at finite depth.

Each runner returns a :class:`ScenarioReport`.  Reports depend only on the
parameters and the seed; the wall-clock duration is kept out of the JSON
unless explicitly requested, so two runs produce identical bytes.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from ..errors import HahnfieldError
from ..exponents import INF, Exponent, in_subgroup, project
from ..order import (
    ComplementReport,
    chain_step,
    check_additive_complement,
    check_integer_part,
    check_r_gamma,
    check_weak_complement,
    embdsrf_density,
    in_neg_ring,
    neg_part,
    quotient_field_witness,
)
from ..series import Series, format_series
from ..valuation import density_gap, residue_constant, val
from .. import sampling

__all__ = [
    "Assertion",
    "ScenarioReport",
    "SCENARIOS",
    "scenario_psf_integer_part",
    "scenario_chain_counterexample",
    "scenario_quotient_field",
    "scenario_embdsrf",
    "canonical_alpha",
    "chain_element",
    "embdsrf_sample",
]

MAX_WITNESSES = 5
# precision for inverting exact multi-term Puiseux samples
INVERT_HORIZON = Exponent([4])


@dataclass
class Assertion:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, witness, reason: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append({"witness": _text(witness), "reason": reason})

    def run(self, witness, fn: Callable[[], Optional[str]]) -> None:
        """Count one check; ``fn`` returns a failure reason or None."""
        try:
            reason = fn()
        except HahnfieldError as exc:
            reason = f"{type(exc).__name__}: {exc}"
        self.check(reason is None, witness, reason or "")

    @classmethod
    def from_report(cls, name: str, rep: ComplementReport) -> "Assertion":
        return cls(name, rep.samples, list(rep.failures))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": len(self.failures),
            "failures": self.failures[:MAX_WITNESSES],
        }


def _text(w) -> str:
    if isinstance(w, Series):
        return format_series(w)
    return str(w)


@dataclass
class ScenarioReport:
    scenario: str
    parameters: dict
    assertions: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    duration: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def add(self, a: Assertion) -> Assertion:
        self.assertions.append(a)
        return a

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "scenario": self.scenario,
            "parameters": self.parameters,
            "notes": self.notes,
            "passed": self.passed,
            "assertions": [a.to_json() for a in self.assertions],
        }
        if timing and self.duration is not None:
            out["duration_seconds"] = round(self.duration, 6)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=False)

    def summary(self) -> str:
        lines = [f"scenario {self.scenario}: {'PASS' if self.passed else 'FAIL'}"]
        for a in self.assertions:
            status = "ok " if a.passed else "FAIL"
            lines.append(f"  [{status}] {a.name} ({a.checked} checks, {len(a.failures)} failures)")
        if self.duration is not None:
            lines.append(f"  duration {self.duration:.3f}s")
        return "\n".join(lines)


def _params(depth, prec, seed, samples, **extra) -> dict:
    p = {"depth": depth, "precision": str(prec) if prec is not None else None,
         "seed": seed, "samples": samples}
    p.update(extra)
    return p


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.duration = time.perf_counter() - t0
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# Puiseux series: integer part, weak and additive complement

@_timed
def scenario_psf_integer_part(n_max: int = 6, samples: int = 200, seed: Optional[int] = None) -> ScenarioReport:
    """Integer part Q[Q^{<0}] + Z of the Puiseux series field, sampled."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    seed = sampling.resolve_seed(seed)
    rng = sampling.rng_for(seed, "psf", n_max)
    report = ScenarioReport("psf-integer-part", _params(1, INVERT_HORIZON, seed, samples, n_max=n_max))
    report.notes.append(
        "finite-precision samples of Q((t^(1/n))), n <= n_max; statements about the "
        "completion are not covered"
    )
    t = Series.monomial(Exponent([1]))
    field_samples = [
        Series.constant(3, 1),
        2 - t,
        Series.monomial(Exponent([-1])) + Fraction(1, 2),
    ]
    field_samples += [sampling.psf_series(rng, n_max) for _ in range(samples)]
    # elements produced by inversion (geometric-series path)
    inverted = []
    for _ in range(max(1, samples // 4)):
        u = sampling.psf_series(rng, n_max, max_terms=4)
        if not u.terms or (u.prec is not None and u.terms[0][0] >= u.prec):
            continue
        target = INVERT_HORIZON if u.prec is None and len(u.terms) > 1 else None
        try:
            inverted.append(u.invert(target))
        except HahnfieldError:
            continue
    field_samples += [s for s in inverted if _floorable(s)]
    ring = [sampling.integer_part_sample(rng, 1, denom_max=n_max) for _ in range(samples)]
    neg_ring = [sampling.integer_part_sample(rng, 1, denom_max=n_max, with_const=False)
                for _ in range(samples)]

    report.add(Assertion.from_report("integer-part axioms", check_integer_part(field_samples)))
    report.add(Assertion.from_report("weak-complement axioms",
                                     check_weak_complement(ring, field_samples)))
    report.add(Assertion.from_report("additive-complement axioms",
                                     check_additive_complement(neg_ring, field_samples)))

    decomp = report.add(Assertion("negative part is a Laurent polynomial in t^(-1/n)"))
    zero = Exponent([0])
    for a in field_samples:
        def one(a=a):
            b = neg_part(a)
            n_neg = sum(1 for e, _ in a.terms if e < zero)
            if len(b.terms) != n_neg:
                return f"negative part has {len(b.terms)} terms, sample has {n_neg} negative terms"
            den = _common_denominator(a)
            if any((e.coords[0] * den).denominator != 1 for e, _ in b.terms):
                return "negative part leaves the exponent lattice of the sample"
            rest = a - b
            if not rest.is_zero() and rest.terms and rest.terms[0][0] < zero:
                return f"remainder {format_series(rest)} has negative value"
            return None
        decomp.run(a, one)
    return report


def _common_denominator(a: Series) -> int:
    den = 1
    for e, _ in a.terms:
        q = e.coords[0].denominator
        den = den * q // math.gcd(den, q)
    return den


def _floorable(s: Series) -> bool:
    zero = Exponent.zero(s.depth)
    if s.prec is None:
        return True
    if not s.prec > zero:
        return False
    c0 = next((c for e, c in s.terms if e == zero), Fraction(0))
    return c0.denominator != 1 or any(e > zero for e, _ in s.terms)


# ---------------------------------------------------------------------------
# the chain field and its escaping element

def canonical_alpha(depth: int, i: int) -> Exponent:
    """alpha_i for 1 <= i <= d: positive, in C_i = Gamma_{d-i} but not in C_{i-1}."""
    return chain_step(depth, i - 1)


def chain_element(depth: int, upto: Optional[int] = None) -> Series:
    """x = sum of t^alpha_i for i = 1..upto (default: all d levels)."""
    upto = depth if upto is None else upto
    return Series(depth, [(canonical_alpha(depth, i), 1) for i in range(1, upto + 1)])


@_timed
def scenario_chain_counterexample(depth: int = 3, samples: int = 20, seed: Optional[int] = None) -> ScenarioReport:
    """Escape of x from every chain member and density of the chain union."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    d = depth
    seed = sampling.resolve_seed(seed)
    rng = sampling.rng_for(seed, "chain", d)
    report = ScenarioReport("chain-counterexample", _params(d, None, seed, samples))
    x = chain_element(d)
    report.notes.append(f"x = {format_series(x)}; C_i = Gamma_(d-i)")

    levels = report.add(Assertion("support of x touches all d levels"))
    prof = x.support_profile()
    levels.check(prof.levels_touched == frozenset(range(d)), x,
                 f"levels touched {sorted(prof.levels_touched)}")

    escape = report.add(Assertion("x escapes every proper chain member"))
    for j in range(d):
        outside = [e for e, _ in x.terms if not in_subgroup(e, d - j)]
        escape.check(bool(outside), x, f"support of x lies in C_{j}")

    inside = report.add(Assertion("truncation x_m lies in C_m"))
    gaps = report.add(Assertion("x_m approximates x within every bound of C_m, at every coarsening"))
    immediate = report.add(Assertion("truncations keep the value and residue of x"))
    vx = val(x)
    for m in range(1, d):
        # the filtered support, read as an exact element of k((C_m))
        xm = x.truncate(canonical_alpha(d, m + 1)).with_prec(None)
        inside.check(all(in_subgroup(e, d - m) for e, _ in xm.terms) and xm == chain_element(d, m),
                     xm, "truncation leaves the chain member")
        gap = density_gap(x, xm)
        for _ in range(samples):
            beta = Exponent([0] * (d - m) + [sampling.coord(rng) for _ in range(m)])
            for k in range(1, d + 1):
                ok = gap is not INF and project(gap, k) >= project(beta, k)
                gaps.check(ok, xm, f"gap {gap} below bound {beta} at level {k}")
        def imm(xm=xm):
            if val(xm) != vx:
                return f"value changed: {val(xm)} != {vx}"
            if residue_constant(xm.shift(-vx)) != residue_constant(x.shift(-vx)):
                return "residue changed"
            return None
        immediate.run(xm, imm)
    return report


# ---------------------------------------------------------------------------
# quotient field of the Neg rings

def _worked_quotient() -> tuple[Series, int]:
    a = Series(2, [(Exponent([0, 0]), 3), (Exponent([0, 2]), 1)])
    return a, 1


@_timed
def scenario_quotient_field(depth: int = 3, samples: int = 50, seed: Optional[int] = None) -> ScenarioReport:
    """Each a in k((C_nu)) is a quotient of two elements with negative support."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    d = depth
    seed = sampling.resolve_seed(seed)
    rng = sampling.rng_for(seed, "quotient", d)
    report = ScenarioReport("quotient-field", _params(d, None, seed, samples))
    # the worked case is depth 2 whatever the scenario depth
    cases: list[tuple[Series, int]] = [_worked_quotient(), (Series.zero(d), 1)]
    for _ in range(samples):
        nu = rng.randrange(d)
        n = rng.randint(1, sampling.MAX_TERMS)
        exps = {Exponent([0] * (d - nu) + [sampling.coord(rng) for _ in range(nu)]) for _ in range(n)}
        cases.append((Series(d, [(e, sampling.rational(rng)) for e in exps]), nu))

    neg = report.add(Assertion("both parts have only negative exponents"))
    back = report.add(Assertion("division recovers a"))
    member = report.add(Assertion("both parts lie in Neg k((C_(nu+1))) with value <= 0"))
    for a, nu in cases:
        dd = a.depth
        try:
            num, den = quotient_field_witness(a, nu)
        except HahnfieldError as exc:
            neg.check(False, a, f"{type(exc).__name__}: {exc}")
            continue
        neg.check(in_neg_ring(num) and in_neg_ring(den), a,
                  f"parts {format_series(num)}, {format_series(den)}")
        back.check(num * den.invert() == a, a, "num / den differs from a")
        zero = Exponent.zero(dd)
        ok = True
        for part in (num, den):
            v = val(part)
            ok &= v is INF or v <= zero
            ok &= all(in_subgroup(e, dd - nu - 1) for e, _ in part.terms)
        member.check(ok, a, f"witness for nu = {nu} leaves R")
    return report


# ---------------------------------------------------------------------------
# density of K_Gamma in the residue field of the coarsening

def _worked_embdsrf() -> tuple[Series, Exponent, int]:
    a = Series(2, [(Exponent([0, -1]), 1), (Exponent([0, 6]), 1)])
    return a, Exponent([0, 5]), 1


def embdsrf_sample(rng, d: int, level: Optional[int] = None):
    """A conforming (a, gamma, level) triple; ``level`` is drawn when not given."""
    j = rng.randrange(d) if level is None else level
    gamma = sampling.level_exponent(rng, d, j)
    # v(a) in Gamma_j, below gamma
    while True:
        va = Exponent([0] * j + [sampling.coord(rng) for _ in range(d - j)])
        if va < gamma:
            break
    terms = {va: sampling.rational(rng)}
    for _ in range(rng.randint(0, sampling.MAX_TERMS - 2)):
        e = sampling.exponent(rng, d) if rng.random() < 0.3 else \
            Exponent([0] * j + [sampling.coord(rng) for _ in range(d - j)])
        if e > va:
            terms[e] = sampling.rational(rng)
    # a known term beyond gamma fixes the sign of the tail of a*c
    above = gamma + sampling.level_exponent(rng, d, rng.randrange(d))
    terms[above] = sampling.rational(rng)
    if rng.random() < 0.5:
        a = Series(d, list(terms.items()))
    else:
        top = max(terms)
        a = Series(d, list(terms.items()), top + sampling.level_exponent(rng, d, rng.randrange(d)))
    return a, gamma, j


@_timed
def scenario_embdsrf(depth: int = 3, samples: int = 100, seed: Optional[int] = None) -> ScenarioReport:
    """Approximation from inside K_Gamma and the closure of R_Gamma."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    d = depth
    seed = sampling.resolve_seed(seed)
    rng = sampling.rng_for(seed, "embdsrf", d)
    report = ScenarioReport("embdsrf", _params(d, None, seed, samples))

    worked = report.add(Assertion("worked example: a = t^[0,-1] + t^[0,6], gamma = [0,5]"))
    a, gamma, j = _worked_embdsrf()

    def check_worked():
        w = embdsrf_density(a, gamma, j)
        want = {
            "c": Series.monomial(Exponent([0, -5])),
            "r": Series.monomial(Exponent([0, -6])),
            "b": Series.monomial(Exponent([0, -1])),
        }
        for k, v in want.items():
            if getattr(w, k) != v:
                return f"{k} = {format_series(getattr(w, k))}, expected {format_series(v)}"
        if w.gap != Exponent([0, 6]):
            return f"gap {w.gap} != [0,6]"
        return None

    worked.run(a, check_worked)

    trivial = report.add(Assertion("a already in K_Gamma with support below gamma gives b = a"))
    a0 = Series(d, [(Exponent([0] * (d - 1) + [-2]), 3), (Exponent([0] * (d - 1) + [1]), -1)])
    g0 = Exponent([0] * (d - 1) + [4])

    def check_trivial():
        w = embdsrf_density(a0, g0, d - 1)
        return None if (w.b == a0 and w.gap is INF) else f"b = {format_series(w.b)}, gap {w.gap}"

    trivial.run(a0, check_trivial)

    dens = report.add(Assertion("v(a - b) >= gamma and support(b) in Gamma_j"))
    for _ in range(samples):
        a, gamma, j = embdsrf_sample(rng, d)

        def one(a=a, gamma=gamma, j=j):
            w = embdsrf_density(a, gamma, j)
            if not (w.gap is INF or w.gap >= gamma):
                return f"gap {w.gap} < gamma {gamma}"
            if not all(in_subgroup(e, j) for e, _ in w.b.terms):
                return f"b = {format_series(w.b)} leaves Gamma_{j}"
            return None

        dens.run(f"a = {format_series(a)}; gamma = {gamma}; level = {j}", one)

    units = [Series(d, [(Exponent.zero(d), sampling.rational(rng)),
                        (sampling.level_exponent(rng, d, rng.randrange(d)), sampling.rational(rng))])
             for _ in range(4)]
    for j in range(d):
        n_ring = max(4, samples // 10)
        # half drawn inside Gamma_j, half anywhere (the filter must drop those)
        ring = [sampling.integer_part_sample(rng, d, level=j if k % 2 else 0) for k in range(2 * n_ring)]
        gammas = []
        while len(gammas) < max(4, samples // 10):
            g = Exponent([0] * j + [sampling.coord(rng) for _ in range(d - j)])
            if g < Exponent.zero(d):
                gammas.append(g)
        rep = check_r_gamma(ring, j, gammas, units)
        report.add(Assertion.from_report(f"R_Gamma closure and value coverage at level {j}", rep))
    return report


SCENARIOS = {
    "psf-integer-part": scenario_psf_integer_part,
    "chain-counterexample": scenario_chain_counterexample,
    "quotient-field": scenario_quotient_field,
    "embdsrf": scenario_embdsrf,
}
