"""Proof attempts and their line-delimited interchange format.

Attempts are externally produced proof candidates: each carries the
generation strategy that produced it and its position in generation order.
That position, never post-hoc reordering, decides which attempts fall
inside a Pass@K budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .. import errors
from ..llmgateway import ProverStrategy
from ..verifier import Verdict, VerificationOutcome


class AttemptError(errors.ProvebenchError):
    """A proof attempt violates its invariants."""


class AttemptsFormatError(errors.ProvebenchError):
    """An attempts file line is malformed."""


_REQUIRED_KEYS = (
    "problem_id",
    "prover_id",
    "strategy",
    "attempt_index",
    "proof_text",
    "verified",
)


@dataclass(frozen=True, slots=True)
class ProofAttempt:
    problem_id: str
    prover_id: str
    strategy: ProverStrategy
    attempt_index: int
    proof_text: str
    verified: bool
    verify_outcome: VerificationOutcome | None = None

    def __post_init__(self):
        if self.attempt_index < 0:
            raise AttemptError("attempt_index must be nonnegative")
        if (
            self.verified
            and self.verify_outcome is not None
            and self.verify_outcome.verdict is not Verdict.PROVED
        ):
            raise AttemptError(
                "a verified attempt must reference a proved outcome, "
                f"got {self.verify_outcome.verdict.value}"
            )

    def to_record(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "prover_id": self.prover_id,
            "strategy": self.strategy.value,
            "attempt_index": self.attempt_index,
            "proof_text": self.proof_text,
            "verified": self.verified,
        }

    @classmethod
    def from_record(cls, record: dict) -> "ProofAttempt":
        if not isinstance(record, dict):
            raise AttemptError("attempt record must be a JSON object")
        missing = [key for key in _REQUIRED_KEYS if key not in record]
        if missing:
            raise AttemptError(f"attempt record is missing {', '.join(missing)}")
        try:
            strategy = ProverStrategy(record["strategy"])
        except ValueError:
            valid = ", ".join(s.value for s in ProverStrategy)
            raise AttemptError(
                f"unknown strategy {record['strategy']!r} "
                f"(expected one of: {valid})"
            ) from None
        index = record["attempt_index"]
        if isinstance(index, bool) or not isinstance(index, int):
            raise AttemptError("attempt_index must be an integer")
        if not isinstance(record["verified"], bool):
            raise AttemptError("verified must be a boolean")
        return cls(
            problem_id=str(record["problem_id"]),
            prover_id=str(record["prover_id"]),
            strategy=strategy,
            attempt_index=index,
            proof_text=str(record["proof_text"]),
            verified=record["verified"],
        )


def write_attempts(path: str | Path, attempts: list[ProofAttempt]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        for attempt in attempts:
            line = json.dumps(attempt.to_record(), ensure_ascii=False, sort_keys=True)
            handle.write(line + "\n")


def read_attempts(path: str | Path) -> list[ProofAttempt]:
    path = Path(path)
    attempts: list[ProofAttempt] = []
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise AttemptsFormatError(
                    f"{path}:{line_number}: invalid JSON ({exc.msg})"
                ) from exc
            try:
                attempts.append(ProofAttempt.from_record(record))
            except AttemptError as exc:
                raise AttemptsFormatError(f"{path}:{line_number}: {exc}") from exc
    return attempts
