"""Goal negation for disproof attempts.

Only the goal is rewritten; name gets a ``_negative`` suffix, preamble,
binders, and hypotheses are preserved byte for byte.  A goal that is a
plain top-level (in)equality flips its operator so the negation stays
idiomatic; anything with top-level logical structure is wrapped in ``¬``,
which is always sound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .. import errors
from .scan import iter_depth0, normalize_source, strip_comments
from .statement import PLACEHOLDER, FormalStatement

NEGATIVE_SUFFIX = "_negative"

# Top-level logical structure that makes operator flipping unsound.
_GUARD_CHARS = set("∀∃∧∨¬↔→")
# Characters that turn a bare '=' into a different operator.
_EQ_PREFIX_EXCLUDE = set(":=!<>≤≥≠")
_EQ_SUFFIX_EXCLUDE = set("=>")


class NegationRule(enum.Enum):
    EQ_TO_NEQ = "EqToNeq"
    NEQ_TO_EQ = "NeqToEq"
    WRAP_NOT = "WrapNot"


class DegenerateGoalError(errors.ProvebenchError):
    """Goal is empty or all comments; nothing to negate."""


@dataclass(frozen=True)
class NegatedStatement:
    original: FormalStatement
    statement: FormalStatement
    rule: NegationRule


def _scan_goal(stripped: str) -> tuple[list[int], list[int], bool]:
    """Positions of top-level '=' and '≠', plus a logical-structure flag."""
    eqs: list[int] = []
    neqs: list[int] = []
    guarded = False
    for i in iter_depth0(stripped):
        ch = stripped[i]
        nxt = stripped[i + 1] if i + 1 < len(stripped) else ""
        prev = stripped[i - 1] if i > 0 else ""
        if ch in _GUARD_CHARS:
            guarded = True
        elif ch == "-" and nxt == ">":
            guarded = True
        elif (ch == "/" and nxt == "\\") or (ch == "\\" and nxt == "/"):
            guarded = True
        elif ch == "≠":
            neqs.append(i)
        elif ch == "=" and prev not in _EQ_PREFIX_EXCLUDE and nxt not in _EQ_SUFFIX_EXCLUDE:
            eqs.append(i)
    return eqs, neqs, guarded


def negate_statement(stmt: FormalStatement) -> NegatedStatement:
    """Build the counter-statement whose proof would refute ``stmt``.

    Raises DegenerateGoalError when the goal carries no content.
    """
    goal = normalize_source(stmt.goal)
    stripped = strip_comments(goal)
    if not stripped.strip():
        raise DegenerateGoalError(
            f"statement {stmt.theorem_name!r} has no goal content to negate"
        )
    eqs, neqs, guarded = _scan_goal(stripped)
    if not guarded and len(eqs) == 1 and not neqs:
        rule = NegationRule.EQ_TO_NEQ
        position = eqs[0]
        negated_goal = goal[:position] + "≠" + goal[position + 1 :]
    elif not guarded and len(neqs) == 1 and not eqs:
        rule = NegationRule.NEQ_TO_EQ
        position = neqs[0]
        negated_goal = goal[:position] + "=" + goal[position + 1 :]
    else:
        rule = NegationRule.WRAP_NOT
        negated_goal = f"¬ ({goal})"
    negated = replace(
        stmt,
        theorem_name=stmt.theorem_name + NEGATIVE_SUFFIX,
        goal=negated_goal,
        body=PLACEHOLDER,
    )
    return NegatedStatement(original=stmt, statement=negated, rule=rule)
