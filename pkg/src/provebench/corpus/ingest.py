"""Reading and writing the line-delimited problems file."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .. import errors
from .models import Difficulty, DomainChain, Problem

PROBLEMS_SCHEMA = "problems-v1"

_REQUIRED_FIELDS = ("id", "source", "nl_statement", "difficulty", "domains")


class SchemaError(errors.ProvebenchError):
    """Caller asked for a schema this reader does not speak."""


class IngestError(errors.ProvebenchError):
    """A line of the problems file cannot be decoded into a Problem."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {reason}")


class DuplicateProblemError(IngestError):
    def __init__(self, line_number: int, problem_id: str):
        self.problem_id = problem_id
        super().__init__(line_number, f"duplicate problem id {problem_id!r}")


def _decode_problem(record: dict, line_number: int) -> Problem:
    for name in _REQUIRED_FIELDS:
        if name not in record:
            raise IngestError(line_number, f"missing field {name!r}")
    try:
        difficulty = Difficulty(record["difficulty"])
    except ValueError:
        raise IngestError(
            line_number, f"unknown difficulty {record['difficulty']!r}"
        ) from None
    domains_raw = record["domains"]
    if not isinstance(domains_raw, list):
        raise IngestError(line_number, "domains must be a list of chain strings")
    try:
        domains = tuple(DomainChain.parse(item) for item in domains_raw)
        return Problem(
            id=record["id"],
            source=record["source"],
            nl_statement=record["nl_statement"],
            difficulty=difficulty,
            domains=domains,
            reference_answer=record.get("reference_answer"),
        )
    except errors.ProvebenchError as exc:
        raise IngestError(line_number, str(exc)) from exc


def ingest_problems(path: str | Path, schema: str = PROBLEMS_SCHEMA) -> list[Problem]:
    """Load problems from a UTF-8 line-delimited JSON file.

    Errors carry the 1-based line number; a duplicated id reports the line
    of the later occurrence.
    """
    if schema != PROBLEMS_SCHEMA:
        raise SchemaError(f"unknown problems schema {schema!r}, expected {PROBLEMS_SCHEMA!r}")
    problems: list[Problem] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(line_number, f"invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise IngestError(line_number, "record must be a JSON object")
            problem = _decode_problem(record, line_number)
            if problem.id in seen:
                raise DuplicateProblemError(line_number, problem.id)
            seen.add(problem.id)
            problems.append(problem)
    return problems


def problem_to_record(problem: Problem) -> dict:
    record = {
        "id": problem.id,
        "source": problem.source,
        "nl_statement": problem.nl_statement,
        "difficulty": problem.difficulty.value,
        "domains": [chain.render() for chain in problem.domains],
    }
    if problem.reference_answer is not None:
        record["reference_answer"] = problem.reference_answer
    return record


def write_problems(
    path: str | Path, problems: Iterable[Problem], schema: str = PROBLEMS_SCHEMA
) -> None:
    if schema != PROBLEMS_SCHEMA:
        raise SchemaError(f"unknown problems schema {schema!r}, expected {PROBLEMS_SCHEMA!r}")
    with open(path, "w", encoding="utf-8") as handle:
        for problem in problems:
            handle.write(json.dumps(problem_to_record(problem), ensure_ascii=False) + "\n")
