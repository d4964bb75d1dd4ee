"""Exact computations with operads given by generators and relations."""

from .errors import (
    BudgetExceeded,
    ConstructionFailed,
    OperadError,
    ParseError,
    VerificationFailed,
)
from .exactseries import (
    TruncatedSeries,
    parse_series,
    series_compose,
    series_mul,
    series_reciprocal,
    series_reversion,
)
from .freeoperad import (
    compose_at,
    enumerate_basis,
    free_dim_series,
    suboperad_closure,
    symmetrized_power,
)
from .gs import bound_series, euler_defect, gs_binary_root, gs_criterion, growth_exponent_estimate
from .kurosh import branch_relations, strong_construct, verify_construction, weak_construct
from .quotient import (
    Presentation,
    ideal_component,
    is_nilpotent_element,
    quotient_dim,
    quotient_dim_series,
    reduce,
)
from .signature import LinComb, Node, Signature, parse_lincomb, parse_term, render_lincomb

__version__ = "0.1.0"
