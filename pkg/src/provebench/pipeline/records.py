"""Per-candidate funnel records folded out of the event log.

The store holds three pipeline event kinds: ``formalized`` (one per
problem, carrying every generated candidate), ``stage`` (one per candidate
per filter stage attempted), and ``disposition`` (one per candidate,
terminal).  Review services append further ``stage`` events for the expert
stage.  Folding them back yields one PipelineRecord per candidate with its
stage history in funnel order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .. import errors
from ..corpus import STAGE_ORDER, Stage

# Terminal dispositions. Every candidate ends in exactly one.
FAILED_COMPILE = "failed-compile"
FAILED_SEMANTIC = "failed-semantic"
DISPROVED = "disproved"
READY_FOR_REVIEW = "ready-for-review"
ERRORED = "errored"
DUPLICATE = "duplicate"

DISPOSITIONS = (
    FAILED_COMPILE,
    FAILED_SEMANTIC,
    DISPROVED,
    READY_FOR_REVIEW,
    ERRORED,
    DUPLICATE,
)


class RecordConsistencyError(errors.ProvebenchError):
    """Event log contradicts the stage ordering rules."""


class DisproofOutcome(enum.Enum):
    # A verified proof of the negation discards the original statement.
    NEGATION_PROVED = "NegationProved"
    NEGATION_UNPROVED = "NegationUnproved"
    # Goal too degenerate to negate; original kept but flagged.
    NEGATION_ILL_FORMED = "NegationIllFormed"


@dataclass(frozen=True)
class DisproofResult:
    outcome: DisproofOutcome
    attempts: int
    negated_name: str | None = None
    rule: str | None = None

    @property
    def original_survives(self) -> bool:
        return self.outcome is not DisproofOutcome.NEGATION_PROVED

    def to_payload(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "attempts": self.attempts,
            "negated_name": self.negated_name,
            "rule": self.rule,
        }


@dataclass
class PipelineRecord:
    """One candidate's journey through the funnel."""

    problem_id: str
    k: int
    n: int
    stage_results: dict[Stage, dict] = field(default_factory=dict)
    stage_ts: dict[Stage, int] = field(default_factory=dict)
    disposition: str | None = None

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.problem_id, self.k, self.n)

    @property
    def final_stage(self) -> Stage:
        last = None
        for stage in STAGE_ORDER:
            if stage in self.stage_results:
                last = stage
        if last is None:
            raise RecordConsistencyError(f"{self.key}: record has no stages")
        return last

    def passed(self, stage: Stage) -> bool:
        result = self.stage_results.get(stage)
        return bool(result) and bool(result.get("passed"))

    def add_stage(self, stage: Stage, result: dict, ts: int) -> None:
        """Append the next stage outcome, enforcing funnel order."""
        if stage in self.stage_results:
            raise RecordConsistencyError(f"{self.key}: {stage.value} recorded twice")
        index = STAGE_ORDER.index(stage)
        if index > 0:
            previous = STAGE_ORDER[index - 1]
            if previous not in self.stage_results:
                raise RecordConsistencyError(
                    f"{self.key}: {stage.value} recorded before {previous.value}"
                )
            if not self.passed(previous):
                raise RecordConsistencyError(
                    f"{self.key}: {stage.value} recorded after failing "
                    f"{previous.value}"
                )
        self.stage_results[stage] = result
        self.stage_ts[stage] = ts


def load_records(events: list[dict]) -> list[PipelineRecord]:
    """Fold store events into records, in candidate discovery order."""
    records: dict[tuple[str, int, int], PipelineRecord] = {}
    for event in events:
        kind = event.get("kind")
        if kind == "formalized":
            for candidate in event["candidates"]:
                record = PipelineRecord(
                    problem_id=event["problem_id"],
                    k=candidate["k"],
                    n=candidate["n"],
                )
                if record.key in records:
                    raise RecordConsistencyError(
                        f"{record.key}: candidate formalized twice"
                    )
                record.add_stage(
                    Stage.AUTOFORMALIZED,
                    {
                        "passed": True,
                        "parse_status": candidate["parse_status"],
                        "parse_error": candidate.get("parse_error"),
                        "source_text": candidate["source_text"],
                    },
                    event["ts"],
                )
                records[record.key] = record
        elif kind == "stage":
            key = (event["problem_id"], event["k"], event["n"])
            record = records.get(key)
            if record is None:
                raise RecordConsistencyError(f"{key}: stage event for unknown candidate")
            payload = dict(event["payload"])
            payload["passed"] = event["passed"]
            record.add_stage(Stage(event["stage"]), payload, event["ts"])
        elif kind == "disposition":
            key = (event["problem_id"], event["k"], event["n"])
            record = records.get(key)
            if record is None:
                raise RecordConsistencyError(
                    f"{key}: disposition event for unknown candidate"
                )
            if record.disposition is not None:
                raise RecordConsistencyError(f"{key}: two terminal dispositions")
            if event["disposition"] not in DISPOSITIONS:
                raise RecordConsistencyError(
                    f"{key}: unknown disposition {event['disposition']!r}"
                )
            record.disposition = event["disposition"]
    return list(records.values())


def stage_survivor_counts(records: list[PipelineRecord]) -> dict[Stage, int]:
    """How many candidates passed each stage; feeds the funnel report."""
    return {
        stage: sum(1 for record in records if record.passed(stage))
        for stage in STAGE_ORDER
    }
