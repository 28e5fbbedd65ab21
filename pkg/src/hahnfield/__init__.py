"""Exact arithmetic in truncated Hahn series fields Q((t^G)), G = Q^d lex.

The package covers the value group and its convex subgroups, truncated
series with precision tracking, the valuation with its coarsenings and
residue maps, the compatible ordering with integer parts and complements,
Newton-Hensel lifting, and a small expression language with a CLI.
"""

from .errors import (
    DepthMismatchError,
    DomainError,
    HahnfieldError,
    IndeterminateError,
    NonArchimedeanError,
)
from .exponents import (
    INF,
    Exponent,
    archimedean_level,
    exp_add,
    exp_compare,
    exp_div,
    exp_neg,
    exp_scale,
    in_subgroup,
    lift,
    parse_exponent,
    project,
    tail,
)
from .series import (
    Series,
    SupportProfile,
    format_series,
    leading,
    s_add,
    s_invert,
    s_mul,
    s_neg,
    s_sub,
    support_profile,
    truncate,
)
from .valuation import CoarseValue, coarsen, compose_check, density_gap, residue, residue_constant, val
from .order import (
    ComplementReport,
    IntegerPartElement,
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
)
from .hensel import (
    LiftResult,
    Poly,
    hensel_lift,
    in_cyclic_subgroup,
    poly_derive,
    poly_eval,
    root_value,
    series_root,
    unit_root,
)

__version__ = "0.1.0"
