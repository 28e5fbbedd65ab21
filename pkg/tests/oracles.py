"""Independent reference computations, sharing no code with the package.

Series are plain dicts ``{exponent tuple: Fraction}`` with an optional
precision tuple; Python's tuple order is the lexicographic order.  Power
series coefficients come from sympy.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

F = Fraction


def clean(d: dict) -> dict:
    return {e: c for e, c in d.items() if c}


def add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return clean(out)


def neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (e1, c1), (e2, c2) in itertools.product(a.items(), b.items()):
        e = tuple(x + y for x, y in zip(e1, e2))
        out[e] = out.get(e, 0) + c1 * c2
    return clean(out)


def below(a: dict, bound) -> dict:
    if bound is None:
        return dict(a)
    return {e: c for e, c in a.items() if e < tuple(bound)}


def vmin(a: dict):
    return min(a) if a else None


def tmin(*xs):
    xs = [tuple(x) for x in xs if x is not None]
    return min(xs) if xs else None


def tadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sign(a: dict) -> int:
    """Sign of a finite series: sign of the coefficient at the least exponent."""
    if not a:
        return 0
    return 1 if a[min(a)] > 0 else -1


def widen(a: dict, prec, wider, fill: int) -> dict:
    """Fill the unknown window [prec, wider) of a depth-1 series with junk terms."""
    if prec is None:
        return dict(a)
    out = dict(a)
    lo, hi = prec[0], wider[0]
    step = F(1, 2)
    x = lo
    k = 0
    while x < hi:
        out[(x,)] = F(fill * (k + 3), 7)
        x += step
        k += 1
    return clean(out)


def widen_and_truncate(op, a, pa, b, pb, wider):
    """Evaluate ``op`` on two widenings of the inputs; the truncated results must agree.

    Returns the common truncated result and the rule-derived precision.
    """
    if op == "add":
        prec = tmin(pa, pb)
        f = add
    else:
        va, vb = vmin(a), vmin(b)
        cands = []
        if pa is not None:
            cands.append(tadd(pa, vb))
        if pb is not None:
            cands.append(tadd(pb, va))
        prec = tmin(*cands)
        f = mul
    results = []
    for fill in (1, -2):
        r = f(widen(a, pa, wider, fill), widen(b, pb, wider, fill))
        results.append(below(r, prec))
    assert results[0] == results[1], "result depends on unknown terms"
    return results[0], prec


def binomial_root_coeffs(q: int, n: int) -> list:
    """Coefficients of (1+s)^(1/q) up to s^(n-1), via sympy's series expansion."""
    s = sympy.Symbol("s")
    ser = sympy.series((1 + s) ** sympy.Rational(1, q), s, 0, n).removeO()
    poly = sympy.Poly(ser, s)
    return [F(int(sympy.fraction(poly.coeff_monomial(s**k))[0]),
              int(sympy.fraction(poly.coeff_monomial(s**k))[1])) for k in range(n)]


def geometric_inverse(lead_exp, lead_coeff, rest: dict, bound) -> dict:
    """1/(c t^h (1 + eps)) with terms strictly below ``bound``, by solving coefficients.

    Works by repeated substitution: x = c^-1 t^-h - x * (eps-part), until stable.
    """
    h = tuple(lead_exp)
    inv_c = 1 / F(lead_coeff)
    eps = {tuple(x - y for x, y in zip(e, h)): F(c) * inv_c for e, c in rest.items()}
    base = {tuple(-x for x in h): inv_c}
    x = dict(base)
    for _ in range(64):
        nxt = below(add(base, neg(mul(x, eps))), bound)
        if nxt == x:
            return x
        x = nxt
    raise AssertionError("substitution did not stabilise")


def sympy_series_coeffs(expr_text: str, n: int) -> dict:
    """Laurent coefficients of a rational function of x, x^k for k < n."""
    x = sympy.Symbol("x")
    expr = sympy.sympify(expr_text, locals={"x": x})
    ser = sympy.series(expr, x, 0, n).removeO()
    out = {}
    for term in sympy.Add.make_args(sympy.expand(ser)):
        c, p = term.as_coeff_exponent(x)
        if c != 0:
            num, den = sympy.fraction(sympy.Rational(c))
            out[(F(int(p)),)] = F(int(num), int(den))
    return out


def level_of(e) -> int:
    """Index of the first nonzero coordinate (len(e) for the zero vector)."""
    for i, c in enumerate(e):
        if c != 0:
            return i
    return len(e)


def support_scan(a: dict):
    if not a:
        return None, set()
    return min(a), {level_of(e) for e in a}


def floor_by_search(a: dict, depth: int):
    """Floor of an exact series: its negative part plus the integer n that fits.

    The integer is found by trying candidates and testing r <= a < r + 1 with
    the leading-coefficient sign.
    """
    zero = (F(0),) * depth
    negp = {e: c for e, c in a.items() if e < zero}
    c0 = a.get(zero, F(0))
    for n in range(int(c0) - 2, int(c0) + 3):
        r = add(negp, {zero: F(n)})
        lo = sign(add(a, neg(r)))
        hi = sign(add(add(r, {zero: F(1)}), neg(a)))
        if lo >= 0 and hi > 0:
            return r
    raise AssertionError("no floor candidate fits")


# structured encoding shared with the fixture file -------------------------

def enc_exp(e) -> list:
    return [str(F(x)) for x in e]


def enc_series(a: dict, prec) -> dict:
    return {
        "terms": [[enc_exp(e), str(F(c))] for e, c in sorted(a.items())],
        "prec": None if prec is None else enc_exp(prec),
    }
