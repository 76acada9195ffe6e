"""Counting permutations by the number of occurrences of ``[1, 2, ..., k]``.

The engine evaluates beheading functional equations with catalytic
variables collapsed to powers of ``q``; truncating at ``q**r`` gives
polynomial-time counts of permutations with exactly ``r`` occurrences.
"""
from .analysis import MomentReport, centered_moment, mean, normality_report
from .engine import (
    Engine,
    EngineConfig,
    SchemeState,
    SchemeStats,
    count_exactly,
    distribution,
    evaluate,
    initial_state,
    run_stats,
    transitions,
    truncated_counts,
)
from .errors import CapMismatchError, DomainError, IntegrityError, ResourceLimitError
from .formulas import a_closed_form, q_count_single, q_factorial, verify_formulas
from .oracle import behead_check, catalytic_weight, distribution_brute, occurrences, reduce
from .qpoly import QPoly, parse, render

__version__ = "0.1.0"

__all__ = [
    "CapMismatchError", "DomainError", "Engine", "EngineConfig", "IntegrityError",
    "MomentReport", "QPoly", "ResourceLimitError", "SchemeState", "SchemeStats",
    "a_closed_form", "behead_check", "catalytic_weight", "centered_moment",
    "count_exactly", "distribution", "distribution_brute", "evaluate",
    "initial_state", "mean", "normality_report", "occurrences", "q_count_single",
    "q_factorial", "reduce", "render", "run_stats", "transitions", "truncated_counts",
    "verify_formulas",
]
