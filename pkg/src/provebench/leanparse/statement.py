"""Structured view of a single theorem statement.

A statement source is a preamble (imports, opens, helper definitions),
exactly one theorem declaration, and a tactic body introduced by ``:= by``.
The declaration is split into name, binder groups, and goal by tracking
delimiter depth only; the goal separator is the first top-level colon after
the binder groups, so goals may themselves contain colons introduced by
quantifier ascriptions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .. import errors
from .scan import (
    OPEN_TO_CLOSE,
    check_balanced,
    iter_depth0,
    match_delimiter,
    normalize_source,
    skip_ws,
    strip_comments,
    token_stream,
)

PLACEHOLDER = "sorry"

_THEOREM_RE = re.compile(r"^[ \t]*theorem\b", re.MULTILINE)
_WORD_CHAR = re.compile(r"[\w'!?]")


class StatementStructureError(errors.ProvebenchError):
    """Source does not contain exactly one well-formed theorem declaration."""


@dataclass(frozen=True)
class FormalStatement:
    theorem_name: str
    binders: tuple[str, ...]
    goal: str
    preamble: tuple[str, ...] = ()
    body: str = PLACEHOLDER
    problem_id: str = ""
    k: int = 0
    n: int = 0

    @property
    def has_placeholder_body(self) -> bool:
        return strip_comments(self.body).strip() == PLACEHOLDER

    def with_placeholder_body(self) -> "FormalStatement":
        return replace(self, body=PLACEHOLDER)

    def render(self) -> str:
        """Source text for this statement; inverse of parse_statement."""
        signature = " ".join((self.theorem_name, *self.binders))
        header = f"theorem {signature} : {self.goal} := by"
        body = self.body
        if not body.startswith(("\n", " ", "\t")):
            body = "\n  " + body
        text = header + body
        if self.preamble:
            text = "\n".join(self.preamble) + "\n\n" + text
        if not text.endswith("\n"):
            text += "\n"
        return text

    def tokens(self) -> list[str]:
        return token_stream(self.render())


def _preamble_lines(text: str) -> tuple[str, ...]:
    lines = [line.rstrip() for line in text.split("\n")]
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    return tuple(lines)


def parse_statement(
    source: str, *, problem_id: str = "", k: int = 0, n: int = 0
) -> FormalStatement:
    """Parse one theorem statement out of ``source``.

    Raises StatementStructureError when the declaration shape is wrong and
    DelimiterError when brackets or comments are unbalanced.
    """
    src = normalize_source(source)
    stripped = strip_comments(src)
    check_balanced(stripped)

    declarations = list(_THEOREM_RE.finditer(stripped))
    if not declarations:
        raise StatementStructureError("no theorem declaration found")
    if len(declarations) > 1:
        raise StatementStructureError(
            f"found {len(declarations)} theorem declarations, expected exactly one"
        )
    decl = declarations[0]
    preamble = _preamble_lines(src[: decl.start()])

    i = skip_ws(stripped, decl.end())
    name_start = i
    while i < len(stripped) and not stripped[i].isspace() and stripped[i] not in OPEN_TO_CLOSE and stripped[i] != ":":
        i += 1
    theorem_name = src[name_start:i]
    if not theorem_name:
        raise StatementStructureError("theorem declaration has no name")

    binders: list[str] = []
    colon = None
    while i < len(stripped):
        i = skip_ws(stripped, i)
        if i >= len(stripped):
            break
        ch = stripped[i]
        if ch in OPEN_TO_CLOSE:
            close = match_delimiter(stripped, i)
            binders.append(src[i : close + 1])
            i = close + 1
        elif ch == ":" and not stripped.startswith(":=", i):
            colon = i
            break
        else:
            raise StatementStructureError(
                f"unexpected {src[i]!r} between binders and goal separator"
            )
    if colon is None:
        raise StatementStructureError("theorem signature has no goal separator ':'")

    assign = None
    for j in iter_depth0(stripped, colon + 1):
        if stripped.startswith(":=", j):
            assign = j
            break
    if assign is None:
        raise StatementStructureError("statement is not terminated by ':= by'")
    goal = src[colon + 1 : assign].strip()
    if not goal:
        raise StatementStructureError("theorem has an empty goal")

    by_at = skip_ws(stripped, assign + 2)
    if not stripped.startswith("by", by_at) or _WORD_CHAR.match(stripped, by_at + 2):
        raise StatementStructureError("expected 'by' after ':='")
    body = src[by_at + 2 :]
    if not body.strip():
        raise StatementStructureError("missing proof body after ':= by'")

    return FormalStatement(
        theorem_name=theorem_name,
        binders=tuple(binders),
        goal=goal,
        preamble=preamble,
        body=body,
        problem_id=problem_id,
        k=k,
        n=n,
    )
