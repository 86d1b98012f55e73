"""Prover evaluation: Pass@K budgets, scaling curves, and breakdowns."""

from .attempts import (
    AttemptError,
    AttemptsFormatError,
    ProofAttempt,
    read_attempts,
    write_attempts,
)
from .budget import BudgetError, BudgetKind, BudgetSpec
from .errorstats import aggregate_error_patterns
from .metrics import (
    REPORT_SCHEMA,
    EvalError,
    EvalReport,
    MissingDomainError,
    ReportCompatibilityError,
    domain_breakdown,
    ensemble_pass,
    pass_at_k,
    report_from_record,
    report_to_record,
    scaling_curve,
    strategy_comparison,
)

__all__ = [
    "AttemptError",
    "AttemptsFormatError",
    "BudgetError",
    "BudgetKind",
    "BudgetSpec",
    "EvalError",
    "EvalReport",
    "MissingDomainError",
    "ProofAttempt",
    "REPORT_SCHEMA",
    "ReportCompatibilityError",
    "aggregate_error_patterns",
    "domain_breakdown",
    "ensemble_pass",
    "pass_at_k",
    "read_attempts",
    "report_from_record",
    "report_to_record",
    "scaling_curve",
    "strategy_comparison",
    "write_attempts",
]
