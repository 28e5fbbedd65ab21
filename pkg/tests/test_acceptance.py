"""The eight acceptance criteria, each at its stated size and time budget.

Every test records a one-line verdict that the conftest hook prints at the
end of the run; ``pytest -s tests/test_acceptance.py`` also shows them inline.
"""

from __future__ import annotations

import contextlib
import io
import json
import time
from fractions import Fraction

from hahnfield import (
    INF,
    Exponent,
    IndeterminateError,
    Poly,
    Series,
    check_additive_complement,
    check_integer_part,
    check_r_gamma,
    check_weak_complement,
    coarsen,
    compare,
    compose_check,
    embdsrf_density,
    hensel_lift,
    in_subgroup,
    lift,
    residue,
    sign,
    unit_root,
    val,
)
from hahnfield import sampling
from hahnfield.cli import main
from hahnfield.workbench.scenarios import embdsrf_sample

import derived_checks
import gen_fixtures
import oracles
from conftest import record

SEED = sampling.resolve_seed(None)
DEPTHS = (1, 2, 3)


def _verdict(number: int, title: str, failures: list, detail: str) -> None:
    record(number, title, not failures, detail if not failures else f"{detail}; first failure: {failures[0]}")
    assert not failures, failures[:5]


# 1 -------------------------------------------------------------------------

def test_criterion_1_field_axioms():
    t0 = time.perf_counter()
    failures, checks = [], 0
    for d in DEPTHS:
        rng = sampling.rng_for(SEED, "acceptance-1", d)
        xs = [sampling.series(rng, d) for _ in range(500)]
        for a, b, c in zip(xs, xs[1:] + xs[:1], xs[2:] + xs[:2]):
            ab = a * b
            for name, lhs, rhs in (
                ("add-comm", a + b, b + a),
                ("mul-comm", ab, b * a),
                ("add-assoc", (a + b) + c, a + (b + c)),
                ("mul-assoc", ab * c, a * (b * c)),
                ("distrib", a * (b + c), ab + a * c),
                ("add-inverse", a - a, Series.zero(d)),
                ("mul-identity", a * 1, a),
            ):
                checks += 1
                if not lhs.agrees_with(rhs):
                    failures.append((name, str(a), str(b), str(c)))
        one = Series.constant(1, d)
        for k in range(500):
            exact = k % 2 == 1
            u = sampling.unit_like(rng, d, exact=exact)
            target = sampling.relative_target(rng, u) if exact else None
            inv = u.invert(target)
            checks += 1
            prod = u * inv
            # the product is known modulo the relative precision, which is positive
            if not prod.agrees_with(one) or not (prod.prec is None or prod.prec > Exponent.zero(d)):
                failures.append(("multiply-back", str(u)))
    elapsed = time.perf_counter() - t0
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.2f}s >= 10s")
    _verdict(1, "field axioms", failures, f"{checks} checks over 3 depths in {elapsed:.2f}s")


# 2 -------------------------------------------------------------------------

def test_criterion_2_valuation():
    failures, checks, undetermined = [], 0, 0
    for d in DEPTHS:
        rng = sampling.rng_for(SEED, "acceptance-2", d)
        xs = [sampling.series(rng, d) for _ in range(500)]
        for a, b in zip(xs, xs[1:] + xs[:1]):
            if not (a.terms and b.terms):
                # value unknown (or zero): only the lower-bound form applies
                s = (a + b).val_lower_bound()
                checks += 1
                if not s >= min(a.val_lower_bound(), b.val_lower_bound()):
                    failures.append(("ultrametric-bound", str(a), str(b)))
                continue
            va, vb = val(a), val(b)
            checks += 2
            s = (a + b).val_lower_bound()
            if not (s is INF or s >= min(va, vb)):
                failures.append(("ultrametric", str(a), str(b)))
            if val(a * b) != va + vb:
                failures.append(("multiplicative", str(a), str(b)))
            for j in range(d + 1):
                checks += 1
                if not compose_check(a, j):
                    failures.append(("compose", str(a), j))
            for j in range(1, d + 1):
                # move both into the valuation ring of w_j with coarse value 0
                a0 = a.shift(-lift(coarsen(a, j).value, d))
                b0 = b.shift(-lift(coarsen(b, j).value, d))
                try:
                    ra, rb = residue(a0, j), residue(b0, j)
                    rs, rp = residue(a0 + b0, j), residue(a0 * b0, j)
                except IndeterminateError:
                    undetermined += 1
                    continue
                checks += 2
                if not rs.agrees_with(ra + rb):
                    failures.append(("residue-add", str(a0), str(b0), j))
                if not rp.agrees_with(ra * rb):
                    failures.append(("residue-mul", str(a0), str(b0), j))
    _verdict(2, "valuation", failures,
             f"{checks} checks, 500 samples per depth ({undetermined} residues beyond precision)")


# 3 -------------------------------------------------------------------------

def test_criterion_3_integer_part():
    t0 = time.perf_counter()
    rng = sampling.rng_for(SEED, "acceptance-3")
    field = [sampling.psf_series(rng, 8) for _ in range(1000)]
    ring = [sampling.integer_part_sample(rng, 1, denom_max=8) for _ in range(1000)]
    failures = []
    for rep in (check_integer_part(field), check_weak_complement(ring, field)):
        failures += [(rep.axiom, f) for f in rep.failures]
    # compatibility: 0 < x <= y implies v(x) >= v(y)
    pairs = 0
    for x, y in zip(field, field[1:]):
        try:
            if sign(x) <= 0 or sign(y) <= 0:
                continue
            order = compare(x, y)
        except IndeterminateError:
            continue
        lo, hi = (x, y) if order <= 0 else (y, x)
        pairs += 1
        if not val(lo) >= val(hi):
            failures.append(("compatibility", str(lo), str(hi)))
    elapsed = time.perf_counter() - t0
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.2f}s >= 10s")
    _verdict(3, "integer part on Puiseux samples", failures,
             f"1000 samples (n <= 8), {pairs} positive pairs, {elapsed:.2f}s")


# 4 -------------------------------------------------------------------------

def _inverted_samples(rng, count):
    out, zero = [], None
    while len(out) < count:
        d = rng.choice(DEPTHS)
        zero = Exponent.zero(d)
        exact = rng.random() < 0.5
        u = sampling.unit_like(rng, d, exact=exact)
        inv = u.invert(sampling.relative_target(rng, u) if exact else None)
        # the decomposition needs the negative support fully known
        if inv.prec is None or inv.prec >= zero:
            out.append(inv)
    return out


def test_criterion_4_additive_complement():
    rng = sampling.rng_for(SEED, "acceptance-4")
    field = [sampling.field_sample(rng, rng.choice(DEPTHS)) for _ in range(750)]
    inverted = _inverted_samples(rng, 250)
    ring = [sampling.integer_part_sample(rng, rng.choice(DEPTHS), with_const=False) for _ in range(1000)]
    rep = check_additive_complement(ring, field + inverted)
    failures = list(rep.failures)
    # the geometric series leaves only finitely many negative terms
    with_neg = sum(1 for s in inverted if s.terms and s.terms[0][0] < Exponent.zero(s.depth))
    _verdict(4, "additive complement", failures,
             f"{len(field) + len(inverted)} field samples ({len(inverted)} from inversion, "
             f"{with_neg} with negative support), {len(ring)} ring samples")


# 5 -------------------------------------------------------------------------

def test_criterion_5_embdsrf():
    failures, checks = [], 0
    a = Series(2, [(Exponent([0, -1]), 1), (Exponent([0, 6]), 1)])
    w = embdsrf_density(a, Exponent([0, 5]), 1)
    checks += 1
    if (str(w.c), str(w.r), str(w.b), w.gap) != ("t^[0,-5]", "t^[0,-6]", "t^[0,-1]", Exponent([0, 6])):
        failures.append(("worked example", str(w.c), str(w.r), str(w.b), str(w.gap)))
    for d in DEPTHS:
        for j in range(d):
            rng = sampling.rng_for(SEED, "acceptance-5", d, j)
            for _ in range(200):
                a, gamma, _ = embdsrf_sample(rng, d, level=j)
                checks += 1
                try:
                    w = embdsrf_density(a, gamma, j)
                except IndeterminateError as exc:
                    failures.append(("precision", str(a), str(gamma), j, str(exc)))
                    continue
                if not (w.gap is INF or w.gap >= gamma):
                    failures.append(("gap", str(a), str(gamma), j))
                if not all(in_subgroup(e, j) for e, _ in w.b.terms):
                    failures.append(("support", str(a), str(gamma), j))
            ring = [sampling.integer_part_sample(rng, d, level=j if k % 2 else 0) for k in range(40)]
            units = [Series(d, [(Exponent.zero(d), sampling.rational(rng)),
                                (sampling.level_exponent(rng, d, rng.randrange(d)),
                                 sampling.rational(rng))]) for _ in range(4)]
            gammas = []
            while len(gammas) < 200:
                g = Exponent([0] * j + [sampling.coord(rng) for _ in range(d - j)])
                if g < Exponent.zero(d):
                    gammas.append(g)
            rep = check_r_gamma(ring, j, gammas, units)
            checks += rep.samples
            failures += [(rep.axiom, f) for f in rep.failures]
    _verdict(5, "dense subfield and R_Gamma", failures,
             f"{checks} checks, 200 conforming samples per (d, j), worked example included")


# 6 -------------------------------------------------------------------------

def test_criterion_6_hensel():
    t0 = time.perf_counter()
    failures = []
    target = Exponent([16])
    one_plus_t = Series(1, [(Exponent([0]), 1), (Exponent([1]), 1)])
    X = Poly.x(1)
    rng = sampling.rng_for(SEED, "acceptance-6")
    for q in (2, 3, 5):
        root = unit_root(one_plus_t, q, target)
        back = root**q
        if not (back.agrees_with(one_plus_t) and back.prec is not None and back.prec >= target):
            failures.append(("multiply-back", q, str(root)))
        want = oracles.binomial_root_coeffs(q, 16)
        if {e.coords[0]: c for e, c in root.terms} != {Fraction(k): c for k, c in enumerate(want) if c}:
            failures.append(("binomial", q))
        res = hensel_lift(X**q - one_plus_t, 1, target)
        if res.iterations > 5:
            failures.append(("iterations", q, res.iterations))
        # an independent lift from a different start reducing to 1
        start = Series(1, [(Exponent([0]), 1)] +
                       [(Exponent([k]), sampling.rational(rng)) for k in (1, 2, 5)])
        other = hensel_lift(X**q - one_plus_t, 1, target, start=start).root
        if not (other.agrees_with(res.root) and other.prec == res.root.prec == target):
            failures.append(("uniqueness", q, str(other)))
    X2 = Poly.x(2)
    lifted = hensel_lift(X2**3 - Series(2, [(Exponent([0, 0]), 1), (Exponent([0, 1]), 1)]), 1,
                         Exponent([0, 3])).root
    if str(lifted) != "1 + 1/3*t^[0,1] - 1/9*t^[0,2] mod t^[0,3]":
        failures.append(("depth-2", str(lifted)))
    elapsed = time.perf_counter() - t0
    if elapsed >= 5:
        failures.append(f"runtime {elapsed:.2f}s >= 5s")
    _verdict(6, "Hensel lifting", failures, f"q in (2, 3, 5) to t^16, depth-2 example, {elapsed:.2f}s")


# 7 -------------------------------------------------------------------------

SCENARIO_RUNS = [
    ["scenario", "psf-integer-part", "--n-max", "6"],
    ["scenario", "chain-counterexample", "--depth", "4"],
    ["scenario", "quotient-field", "--depth", "3"],
    ["scenario", "embdsrf", "--depth", "3"],
]


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def test_criterion_7_scenarios():
    failures = []
    for argv in SCENARIO_RUNS:
        code1, out1 = _run_cli(argv)
        code2, out2 = _run_cli(argv)
        if code1 != 0 or code2 != 0:
            failures.append((" ".join(argv), "exit", code1, code2))
        if out1 != out2:
            failures.append((" ".join(argv), "output differs between runs"))
        report = json.loads(out1)
        if argv[1] == "chain-counterexample":
            by_name = {a["name"]: a for a in report["assertions"]}
            touched = by_name.get("support of x touches all d levels")
            escape = by_name.get("x escapes every proper chain member")
            if not (touched and touched["passed"] and escape and escape["passed"]):
                failures.append(("escape assertion", touched, escape))
    _verdict(7, "scenario suite", failures,
             f"{len(SCENARIO_RUNS)} scenarios exit 0 with byte-identical reports")


# 8 -------------------------------------------------------------------------

def test_criterion_8_oracle_fixtures():
    failures = []
    if gen_fixtures.dump(gen_fixtures.build()) != derived_checks.FIXTURE.read_text():
        failures.append("fixture file differs from oracle regeneration")
    bad = derived_checks.run_all()
    failures += [(k, v) for k, v in bad.items()]
    _verdict(8, "oracle fixtures", failures,
             f"{len(derived_checks.CHECKS)} oracle values equal exactly")
