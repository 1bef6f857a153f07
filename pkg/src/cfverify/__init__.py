"""Exact generalized continued fractions: construction, equivalence
transformations, convergence diagnostics, and certified verification."""

from .bench import ComparisonRow, compare_table, leibniz_partial, render_report
from .cf_core import (
    CFSpec,
    CoefficientSequence,
    ConvergentTrace,
    convergent,
    convergents,
    preset,
    seq_eval,
)
from .diagnostics import (
    RatioLimit,
    RegimeReport,
    classify,
    correct_decimals,
    empirical_rate,
    rho,
    rho_limit,
)
from .expr_parser import parse_constant_expr, parse_sequence_expr, print_expr
from .hypergeom import HypParams, gauss_cf, gauss_d, hyp2f1_partial, pochhammer
from .numerics import ConstantBracket, ConstantExpr, const_bracket, pi_bracket, to_decimal
from .polyrat import PolyRat
from .transforms import (
    ScalingSequence,
    apply_equivalence,
    compose_scalings,
    scaling_to_match_denominators,
)

__version__ = "0.1.0"
