"""Unanimous multi-judge acceptance of a formal statement.

Each judge answers the back-translation prompt with a single word.  The
verdict normalizer trims and casefolds, then accepts exactly "true" or
"false"; anything else is Unparseable and counts as dissent, so a flaky
judge can only ever make acceptance harder.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from ..corpus import Problem
from ..leanparse import FormalStatement
from .config import ConfigError, ModelEndpoint
from .gateway import Gateway
from .prompts import build_semantic_judge_prompt

DEFAULT_JUDGE_COUNT = 5


class JudgeVerdict(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNPARSEABLE = "Unparseable"


def normalize_verdict(raw_text: str) -> JudgeVerdict:
    """Exact 'true'/'false' after trim and casefold; everything else dissents."""
    text = raw_text.strip().casefold()
    if text == "true":
        return JudgeVerdict.TRUE
    if text == "false":
        return JudgeVerdict.FALSE
    return JudgeVerdict.UNPARSEABLE


@dataclass(frozen=True)
class JudgeVote:
    model_id: str
    raw_text: str
    verdict: JudgeVerdict


@dataclass(frozen=True)
class VoteOutcome:
    votes: tuple[JudgeVote, ...]
    accepted: bool


def tally_votes(verdicts: Iterable[JudgeVerdict]) -> bool:
    """True only for a nonempty, unanimously TRUE slate."""
    verdicts = tuple(verdicts)
    return bool(verdicts) and all(v is JudgeVerdict.TRUE for v in verdicts)


def semantic_vote(
    gateway: Gateway,
    problem: Problem,
    statement: FormalStatement,
    judges: list[ModelEndpoint],
) -> VoteOutcome:
    """Put ``statement`` before every judge; accept only on unanimity."""
    if not judges:
        raise ConfigError("semantic vote needs at least one judge endpoint")
    prompt = build_semantic_judge_prompt(problem.nl_statement, statement.render())
    votes = []
    for judge in judges:
        raw = gateway.complete(judge, prompt, n=1)[0]
        votes.append(JudgeVote(judge.model_id, raw, normalize_verdict(raw)))
    return VoteOutcome(
        votes=tuple(votes), accepted=tally_votes(v.verdict for v in votes)
    )
