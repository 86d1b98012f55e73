"""Line-delimited statement records produced by the autoformalization step."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .. import errors

PARSE_OK = "ok"
PARSE_FAILED = "failed"
_STATUSES = (PARSE_OK, PARSE_FAILED)


class StatementFileError(errors.ProvebenchError):
    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {reason}")


@dataclass(frozen=True)
class StatementRecord:
    problem_id: str
    k: int
    n: int
    source_text: str
    parse_status: str

    def __post_init__(self):
        if self.parse_status not in _STATUSES:
            raise ValueError(f"parse_status must be one of {_STATUSES}")


def write_statements(path: str | Path, records: Iterable[StatementRecord]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(
                json.dumps(
                    {
                        "problem_id": record.problem_id,
                        "k": record.k,
                        "n": record.n,
                        "source_text": record.source_text,
                        "parse_status": record.parse_status,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_statements(path: str | Path) -> list[StatementRecord]:
    records: list[StatementRecord] = []
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise StatementFileError(line_number, f"invalid JSON ({exc.msg})") from exc
            try:
                records.append(
                    StatementRecord(
                        problem_id=raw["problem_id"],
                        k=raw["k"],
                        n=raw["n"],
                        source_text=raw["source_text"],
                        parse_status=raw["parse_status"],
                    )
                )
            except (KeyError, ValueError) as exc:
                raise StatementFileError(line_number, str(exc)) from exc
    return records
