"""Command-line front end: ``hahnfield VERB ...``.

Every verb writes one JSON object to standard output and a short human
summary to standard error.  The exit status is 0 when every assertion in
the report holds, 1 when some assertion fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import sampling
from .errors import HahnfieldError
from .exponents import INF, in_subgroup
from .hensel import hensel_lift, poly_eval, series_root
from .order import (
    check_additive_complement,
    check_integer_part,
    check_weak_complement,
    compare,
    embdsrf_density,
    floor,
)
from .series import Series, format_series
from .valuation import coarsen, residue, val
from .workbench.evaluator import (
    EvalContext,
    eval_expr,
    eval_poly,
    format_value,
    parse_bound,
)
from .workbench.parser import expr_depth, parse, parse_poly
from .workbench.scenarios import SCENARIOS

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Out:
    def __init__(self):
        self.ok = True

    def emit(self, obj: dict, summary: str, ok: bool = True) -> None:
        self.ok = self.ok and ok
        sys.stdout.write(json.dumps(obj) + "\n")
        sys.stderr.write(summary + "\n")


def _ctx(args, *exprs) -> EvalContext:
    depth = args.depth
    inferred = {d for d in (expr_depth(e) for e in exprs) if d is not None}
    if depth is None and len(inferred) == 1:
        depth = inferred.pop()
    prec = parse_bound(args.prec) if getattr(args, "prec", None) else None
    if depth is None:
        depth = prec.depth if prec is not None else 1
    return EvalContext.for_expr(exprs[0], depth, prec) if exprs else EvalContext.make(depth, prec)


def _series(text: str, args) -> tuple[Series, EvalContext]:
    e = parse(text)
    ctx = _ctx(args, e)
    v = eval_expr(e, ctx)
    if not isinstance(v, Series):
        raise HahnfieldError(f"{text!r} evaluates to {format_value(v)}, not a series")
    return v, ctx


# verbs -------------------------------------------------------------------

def cmd_eval(args, out: _Out) -> None:
    e = parse(args.expr)
    ctx = _ctx(args, e)
    v = eval_expr(e, ctx)
    text = format_value(v)
    out.emit({"input": args.expr, "depth": ctx.depth, "precision": str(ctx.prec), "value": text}, text)


def cmd_val(args, out: _Out) -> None:
    a, _ = _series(args.expr, args)
    v = val(a)
    out.emit({"input": args.expr, "value": format_value(v)}, f"v = {format_value(v)}")


def cmd_coarsen(args, out: _Out) -> None:
    a, _ = _series(args.expr, args)
    cv = coarsen(a, args.level)
    text = format_value(cv.value)
    out.emit({"input": args.expr, "level": args.level, "value": text},
             f"w_{args.level} = {text}")


def cmd_res(args, out: _Out) -> None:
    a, _ = _series(args.expr, args)
    r = residue(a, args.level)
    text = format_series(r)
    try:
        coarse = format_value(coarsen(a, args.level).value)
    except HahnfieldError:
        coarse = None
    out.emit({"input": args.expr, "level": args.level, "value": coarse, "residue": text},
             f"residue = {text}")


def cmd_floor(args, out: _Out) -> None:
    a, _ = _series(args.expr, args)
    r = floor(a)
    rs = r.as_series()
    ok = compare(rs, a) <= 0 and compare(a, rs + 1) < 0
    out.emit({"input": args.expr, "floor": format_series(rs), "neg": format_series(r.neg),
              "const": r.const, "window_holds": ok}, format_series(rs), ok)


def cmd_cmp(args, out: _Out) -> None:
    ea, eb = parse(args.a), parse(args.b)
    ctx = _ctx(args, ea, eb)
    a, b = eval_expr(ea, ctx), eval_expr(eb, ctx)
    if not (isinstance(a, Series) and isinstance(b, Series)):
        raise HahnfieldError("cmp compares two series")
    order = int(compare(a, b))
    rel = {-1: "<", 0: "=", 1: ">"}[order]
    out.emit({"a": args.a, "b": args.b, "order": order, "relation": rel},
             f"{format_series(a)} {rel} {format_series(b)}")


def _check_samples(kind: str, n: int, seed: int, depth: int):
    rng = sampling.rng_for(seed, "check", kind, depth)
    if depth == 1:
        field = [sampling.psf_series(rng, 8) for _ in range(n)]
    else:
        field = [sampling.field_sample(rng, depth) for _ in range(n)]
    ring = [sampling.integer_part_sample(rng, depth, with_const=(kind != "additive-complement"))
            for _ in range(n)]
    return ring, field


def cmd_check(args, out: _Out) -> None:
    seed = sampling.resolve_seed(args.seed)
    depth = args.depth or 1
    ring, field = _check_samples(args.kind, args.samples, seed, depth)
    if args.kind == "integer-part":
        rep = check_integer_part(field)
    elif args.kind == "weak-complement":
        rep = check_weak_complement(ring, field)
    else:
        rep = check_additive_complement(ring, field)
    obj = rep.to_json()
    obj["parameters"] = {"depth": depth, "seed": seed, "samples": args.samples}
    out.emit(obj, f"check {args.kind}: {'PASS' if rep.passed else 'FAIL'} "
                  f"({len(rep.failures)} failures over {rep.samples} samples)", rep.passed)


def cmd_embdsrf(args, out: _Out) -> None:
    a, ctx = _series(args.a, args)
    gamma = parse_bound(args.gamma, ctx.depth)
    w = embdsrf_density(a, gamma, args.level)
    gap_ok = w.gap is INF or w.gap >= gamma
    support_ok = all(in_subgroup(e, args.level) for e, _ in w.b.terms)
    obj = {
        "a": format_series(a), "gamma": str(gamma), "level": args.level,
        "c": format_series(w.c), "r": format_series(w.r), "b": format_series(w.b),
        "gap": format_value(w.gap), "gap_at_least_gamma": gap_ok, "support_in_gamma": support_ok,
    }
    out.emit(obj, f"b = {format_series(w.b)}, v(a - b) = {format_value(w.gap)}", gap_ok and support_ok)


def cmd_hensel(args, out: _Out) -> None:
    e = parse_poly(args.poly)
    ctx = _ctx(args, e)
    f = eval_poly(e, ctx)
    target = parse_bound(args.target, ctx.depth)
    res = hensel_lift(f, Fraction(args.residue_root.strip()), target)
    # re-check independently of the lift's own bookkeeping
    v = poly_eval(f, res.root).val_lower_bound()
    ok = v is INF or v >= target
    obj = {
        "poly": str(f), "residue_root": args.residue_root, "target": str(target),
        "root": format_series(res.root), "iterations": res.iterations,
        "achieved": format_value(res.achieved), "verified": ok,
    }
    out.emit(obj, f"root = {format_series(res.root)} ({res.iterations} Newton steps)", ok)


def cmd_root(args, out: _Out) -> None:
    a, ctx = _series(args.of, args)
    target = parse_bound(args.target, ctx.depth) if args.target else ctx.prec
    b = series_root(a, args.q, target)
    back = (b ** args.q - a)
    ok = back.is_zero_mod_prec()
    obj = {"of": format_series(a), "q": args.q, "root": format_series(b), "power_back_agrees": ok}
    out.emit(obj, f"root = {format_series(b)}", ok)


def cmd_scenario(args, out: _Out) -> None:
    fn = SCENARIOS[args.name]
    kwargs = {"seed": sampling.resolve_seed(args.seed)}
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.name == "psf-integer-part":
        kwargs["n_max"] = args.n_max
    else:
        kwargs["depth"] = args.depth or 3
    report = fn(**kwargs)
    out.ok = out.ok and report.passed
    sys.stdout.write(report.dumps(timing=args.timing) + "\n")
    sys.stderr.write(report.summary() + "\n")


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hahnfield", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, prec=True):
        sp.add_argument("--depth", type=int, help="depth d of the value group Q^d")
        if prec:
            sp.add_argument("--prec", help="default precision for exact divisions, e.g. t^[8,8]")

    sp = sub.add_parser("eval", help="evaluate an expression")
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=cmd_eval)

    for name, func, help_ in (("val", cmd_val, "valuation"), ("floor", cmd_floor, "integer-part floor")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("expr")
        common(sp)
        sp.set_defaults(func=func)

    for name, func, help_ in (("coarsen", cmd_coarsen, "coarse value"), ("res", cmd_res, "residue")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("expr")
        sp.add_argument("--level", type=int, required=True)
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("cmp", help="compare two series in the ordering")
    sp.add_argument("a")
    sp.add_argument("b")
    common(sp)
    sp.set_defaults(func=cmd_cmp)

    sp = sub.add_parser("check", help="sample-based axiom checks")
    sp.add_argument("kind", choices=["integer-part", "weak-complement", "additive-complement"])
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--depth", type=int, default=1)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("embdsrf", help="approximate a from inside K_Gamma")
    sp.add_argument("--a", required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--level", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_embdsrf)

    sp = sub.add_parser("hensel", help="lift a simple residue root")
    sp.add_argument("--poly", required=True, help='polynomial in X, e.g. "X^2-(1+t)"')
    sp.add_argument("--residue-root", required=True)
    sp.add_argument("--target", required=True)
    common(sp)
    sp.set_defaults(func=cmd_hensel)

    sp = sub.add_parser("root", help="q-th root of a series")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--of", required=True)
    sp.add_argument("--target")
    common(sp)
    sp.set_defaults(func=cmd_root)

    sp = sub.add_parser("scenario", help="run a scenario and print its report")
    sp.add_argument("name", choices=sorted(SCENARIOS))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--timing", action="store_true", help="include wall-clock duration in the JSON")
    sp.set_defaults(func=cmd_scenario)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out()
    try:
        args.func(args, out)
    except (HahnfieldError, ZeroDivisionError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK if out.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
