"""Feasibility, height minimization and enumeration for tangle swap lists,
plus an executable NAE 3-SAT reduction to list feasibility."""

from .core import (
    SwapList,
    Tangle,
    Verdict,
    apply_move,
    classify_list,
    format_list,
    format_tangle,
    gen_ln,
    identity,
    parse_list,
    parse_tangle,
    realized_multiset,
    required_final_order,
    validate_list,
    verify_realizes,
)
from .search import (
    FeasibilityResult,
    Status,
    check_unique_swap_order,
    decide_feasible,
    enumerate_realizations,
    minimize_height,
    naive_feasible,
)
from .simple import odd_even_realize, target_permutation

__version__ = "0.1.0"

__all__ = [
    "FeasibilityResult",
    "Status",
    "SwapList",
    "Tangle",
    "Verdict",
    "apply_move",
    "check_unique_swap_order",
    "classify_list",
    "decide_feasible",
    "enumerate_realizations",
    "format_list",
    "format_tangle",
    "gen_ln",
    "identity",
    "minimize_height",
    "naive_feasible",
    "odd_even_realize",
    "parse_list",
    "parse_tangle",
    "realized_multiset",
    "required_final_order",
    "target_permutation",
    "validate_list",
    "verify_realizes",
]
