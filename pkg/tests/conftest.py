from __future__ import annotations

import itertools

import pytest

from provebench.corpus import Difficulty, DomainChain, Problem

_counter = itertools.count(1)


def build_problem(
    problem_id: str | None = None,
    source: str = "Omni-math",
    nl_statement: str = "Show that 1 + 1 = 2.",
    difficulty: Difficulty = Difficulty.HIGH_SCHOOL,
    domains: tuple[str, ...] = ("Mathematics -> Algebra -> Prealgebra -> Integers",),
    reference_answer: str | None = None,
) -> Problem:
    if problem_id is None:
        problem_id = f"prob_{next(_counter):04d}"
    return Problem(
        id=problem_id,
        source=source,
        nl_statement=nl_statement,
        difficulty=difficulty,
        domains=tuple(DomainChain.parse(text) for text in domains),
        reference_answer=reference_answer,
    )


@pytest.fixture
def make_problem():
    return build_problem
