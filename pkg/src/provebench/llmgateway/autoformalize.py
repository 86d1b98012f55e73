"""Best-of-N statement generation across a panel of autoformalizers.

Every (autoformalizer k, sample n) pair yields one candidate.  Completions
that do not parse stay in the output as parse-failed candidates; dropping
them silently would make downstream funnel accounting lie about the size
of the initial pool.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..corpus import Problem
from ..leanparse import (
    DelimiterError,
    FormalStatement,
    StatementStructureError,
    parse_statement,
)
from .config import ModelEndpoint
from .gateway import Gateway
from .prompts import build_autoformalize_prompt, suggest_theorem_name

_FENCE_RE = re.compile(r"```(?:lean4|lean)?\s*\n(.*?)```", re.DOTALL)


@dataclass(frozen=True)
class AutoformalizationCandidate:
    problem_id: str
    k: int
    n: int
    raw_text: str
    statement: FormalStatement | None = None
    parse_error: str | None = None

    @property
    def parsed(self) -> bool:
        return self.statement is not None


def extract_code_block(text: str) -> str:
    """The first fenced code block, or the whole text when unfenced."""
    match = _FENCE_RE.search(text)
    if match:
        return match.group(1)
    return text


def autoformalize(
    gateway: Gateway,
    problem: Problem,
    autoformalizers: list[ModelEndpoint],
    n: int,
) -> list[AutoformalizationCandidate]:
    """K x n candidates for ``problem``, ordered by (k, n), zero-based."""
    prompt = build_autoformalize_prompt(
        problem.nl_statement, suggest_theorem_name(problem.id)
    )
    candidates: list[AutoformalizationCandidate] = []
    for k, endpoint in enumerate(autoformalizers):
        completions = gateway.complete(endpoint, prompt, n=n)
        for index, raw_text in enumerate(completions):
            code = extract_code_block(raw_text)
            try:
                statement = parse_statement(code, problem_id=problem.id, k=k, n=index)
                candidates.append(
                    AutoformalizationCandidate(
                        problem_id=problem.id,
                        k=k,
                        n=index,
                        raw_text=raw_text,
                        statement=statement,
                    )
                )
            except (DelimiterError, StatementStructureError) as exc:
                candidates.append(
                    AutoformalizationCandidate(
                        problem_id=problem.id,
                        k=k,
                        n=index,
                        raw_text=raw_text,
                        parse_error=str(exc),
                    )
                )
    return candidates
