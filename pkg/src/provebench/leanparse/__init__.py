"""Shallow parser, renderer, and negation transform for theorem statements."""

from .io import (
    PARSE_FAILED,
    PARSE_OK,
    StatementFileError,
    StatementRecord,
    read_statements,
    write_statements,
)
from .negation import (
    NEGATIVE_SUFFIX,
    DegenerateGoalError,
    NegatedStatement,
    NegationRule,
    negate_statement,
)
from .scan import DelimiterError, normalize_source, strip_comments, token_stream
from .statement import (
    PLACEHOLDER,
    FormalStatement,
    StatementStructureError,
    parse_statement,
)

__all__ = [
    "DegenerateGoalError",
    "DelimiterError",
    "FormalStatement",
    "NEGATIVE_SUFFIX",
    "NegatedStatement",
    "NegationRule",
    "PARSE_FAILED",
    "PARSE_OK",
    "PLACEHOLDER",
    "StatementFileError",
    "StatementRecord",
    "StatementStructureError",
    "negate_statement",
    "normalize_source",
    "parse_statement",
    "read_statements",
    "strip_comments",
    "token_stream",
    "write_statements",
]
