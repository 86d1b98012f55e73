"""Expert-review queue over the funnel's event store.

Candidates that survived every automated filter (disposition
``ready-for-review``) are offered to human reviewers oldest-first under
time-limited exclusive leases.  A decision appends to the same event store
the funnel writes — a final stage event that settles the record's fate plus
a decision event carrying the full verdict — so funnel statistics reflect
expert outcomes the moment they land.
"""

from __future__ import annotations

import enum
import statistics
import threading
import time
from dataclasses import dataclass

from .. import errors
from ..corpus import AnnotationMetrics, Stage
from ..pipeline import READY_FOR_REVIEW, EventStore

SCHEMA_VERSION = 1
DEFAULT_LEASE_TTL_SECONDS = 30 * 60.0

# The closed set of reasons a statement can be rejected.
REJECTION_CATEGORIES = (
    "Condition Error",
    "Expression Error (Lean Syntax)",
    "Definition Error (No Mathematical Meaning)",
    "Domain Error",
    "Propositional Logic Error",
    "Lack of Geometric Background",
    "Condition Redundancy",
    "Algebraic Expression Error",
)


class ReviewError(errors.ProvebenchError):
    """Base class for review-service failures."""


class UnknownReviewerError(ReviewError):
    """The reviewer id is not in the configured roster."""


class UnknownItemError(ReviewError):
    """No reviewable item has this id."""


class DecisionConflictError(ReviewError):
    """The item is already decided or exclusively leased elsewhere."""


class DecisionValidationError(ReviewError):
    """The decision body violates the decision invariants."""


class ReviewVerdict(enum.Enum):
    APPROVE = "approve"
    REJECT = "reject"


def item_id_for(problem_id: str, k: int, n: int) -> str:
    return f"{problem_id}:{k}:{n}"


def parse_item_id(item_id: str) -> tuple[str, int, int]:
    """Invert :func:`item_id_for`; splits from the right so problem ids may
    themselves contain colons."""
    try:
        problem_id, k, n = item_id.rsplit(":", 2)
        return problem_id, int(k), int(n)
    except ValueError as exc:
        raise UnknownItemError(f"malformed item id {item_id!r}") from exc


@dataclass(frozen=True)
class ReviewItem:
    """Everything a reviewer needs to judge one formal statement."""

    item_id: str
    problem_id: str
    k: int
    n: int
    nl_statement: str
    reference_answer: str | None
    statement_source: str
    votes: tuple[dict, ...]
    disproof: dict

    def to_payload(self) -> dict:
        return {
            "item_id": self.item_id,
            "problem_id": self.problem_id,
            "k": self.k,
            "n": self.n,
            "nl_statement": self.nl_statement,
            "reference_answer": self.reference_answer,
            "statement_source": self.statement_source,
            "votes": list(self.votes),
            "disproof": dict(self.disproof),
        }


@dataclass(frozen=True)
class ReviewDecision:
    item_id: str
    reviewer_id: str
    verdict: ReviewVerdict
    error_category: str | None = None
    duration_seconds: float | None = None

    def __post_init__(self):
        if self.verdict is ReviewVerdict.REJECT:
            if self.error_category is None:
                raise DecisionValidationError(
                    "a rejection must name an error category"
                )
            if self.error_category not in REJECTION_CATEGORIES:
                raise DecisionValidationError(
                    f"unknown error category {self.error_category!r}"
                )
        elif self.error_category is not None:
            raise DecisionValidationError(
                "an approval must not carry an error category"
            )
        if self.duration_seconds is not None and self.duration_seconds < 0:
            raise DecisionValidationError("duration_seconds must be nonnegative")


def decision_from_payload(payload: dict) -> ReviewDecision:
    """Build a decision from a request body, normalising the verdict."""
    if not isinstance(payload, dict):
        raise DecisionValidationError("decision body must be a JSON object")
    for key in ("item_id", "reviewer_id", "verdict"):
        if not isinstance(payload.get(key), str) or not payload.get(key):
            raise DecisionValidationError(f"decision body needs a string {key}")
    try:
        verdict = ReviewVerdict(payload["verdict"].lower())
    except ValueError:
        valid = ", ".join(v.value for v in ReviewVerdict)
        raise DecisionValidationError(
            f"unknown verdict {payload['verdict']!r} (expected one of: {valid})"
        ) from None
    duration = payload.get("duration_seconds")
    if duration is not None and (
        isinstance(duration, bool) or not isinstance(duration, (int, float))
    ):
        raise DecisionValidationError("duration_seconds must be a number")
    category = payload.get("error_category")
    if category is not None and not isinstance(category, str):
        raise DecisionValidationError("error_category must be a string")
    return ReviewDecision(
        item_id=payload["item_id"],
        reviewer_id=payload["reviewer_id"],
        verdict=verdict,
        error_category=category,
        duration_seconds=duration,
    )


@dataclass
class _Snapshot:
    """One consistent read of the store, indexed for queue operations."""

    formalized: dict[str, dict]
    stages: dict[tuple[str, int, int, str], dict]
    queue: list[tuple[str, int, int]]
    decided: dict[tuple[str, int, int], dict]
    decisions: dict[str, list[dict]]


class ReviewService:
    """Queue, lease, and decision logic; the HTTP layer stays thin."""

    def __init__(
        self,
        store: EventStore,
        reviewers: list[str],
        lease_ttl: float = DEFAULT_LEASE_TTL_SECONDS,
        clock=time.time,
        second_opinion: bool = False,
    ):
        if not reviewers:
            raise ReviewError("the reviewer roster must not be empty")
        if lease_ttl <= 0:
            raise ReviewError("lease_ttl must be positive")
        self.store = store
        self.reviewers = frozenset(reviewers)
        self.lease_ttl = lease_ttl
        self.clock = clock
        self.second_opinion = second_opinion
        self._lock = threading.Lock()
        # item_id -> (reviewer_id, lease expiry)
        self._leases: dict[str, tuple[str, float]] = {}

    # --------------------------------------------------------------- reads

    def _require_reviewer(self, reviewer_id: str) -> None:
        if reviewer_id not in self.reviewers:
            raise UnknownReviewerError(f"unknown reviewer {reviewer_id!r}")

    def _snapshot(self) -> _Snapshot:
        formalized: dict[str, dict] = {}
        stages: dict[tuple[str, int, int, str], dict] = {}
        queue: list[tuple[str, int, int]] = []
        decided: dict[tuple[str, int, int], dict] = {}
        decisions: dict[str, list[dict]] = {}
        for event in self.store.events():
            kind = event.get("kind")
            if kind == "formalized":
                formalized[event["problem_id"]] = event
            elif kind == "stage":
                key = (event["problem_id"], event["k"], event["n"])
                stages[(*key, event["stage"])] = event
                if event["stage"] == Stage.EXPERT_APPROVED.value:
                    decided[key] = event
            elif kind == "disposition":
                if event["disposition"] == READY_FOR_REVIEW:
                    queue.append((event["problem_id"], event["k"], event["n"]))
            elif kind == "decision":
                decisions.setdefault(event["item_id"], []).append(event)
        return _Snapshot(formalized, stages, queue, decided, decisions)

    def _build_item(
        self, key: tuple[str, int, int], snap: _Snapshot
    ) -> ReviewItem:
        problem_id, k, n = key
        formalized = snap.formalized.get(problem_id, {})
        entry = next(
            (
                candidate
                for candidate in formalized.get("candidates", ())
                if candidate["k"] == k and candidate["n"] == n
            ),
            {},
        )
        vote_stage = snap.stages.get((*key, Stage.SEMANTIC_VERIFIED.value), {})
        disproof_stage = snap.stages.get((*key, Stage.DISPROOF_SURVIVED.value), {})
        return ReviewItem(
            item_id=item_id_for(*key),
            problem_id=problem_id,
            k=k,
            n=n,
            nl_statement=formalized.get("nl_statement", ""),
            reference_answer=formalized.get("reference_answer"),
            statement_source=entry.get("source_text", ""),
            votes=tuple(vote_stage.get("payload", {}).get("votes", ())),
            disproof=dict(disproof_stage.get("payload", {})),
        )

    def _purge_expired(self, now: float) -> None:
        expired = [
            item_id
            for item_id, (_reviewer, expires) in self._leases.items()
            if expires <= now
        ]
        for item_id in expired:
            del self._leases[item_id]

    # ---------------------------------------------------------- operations

    def next_item(self, reviewer_id: str) -> ReviewItem | None:
        """Lease and return the oldest undecided unleased item, if any."""
        self._require_reviewer(reviewer_id)
        with self._lock:
            snap = self._snapshot()
            now = self.clock()
            self._purge_expired(now)
            for key in snap.queue:
                if key in snap.decided:
                    continue
                item_id = item_id_for(*key)
                lease = self._leases.get(item_id)
                if lease is not None and lease[0] != reviewer_id:
                    continue  # exclusively leased to someone else
                self._leases[item_id] = (reviewer_id, now + self.lease_ttl)
                return self._build_item(key, snap)
        return None

    def submit_decision(self, decision: ReviewDecision) -> dict:
        """Persist one reviewer's verdict; the first verdict settles the record."""
        self._require_reviewer(decision.reviewer_id)
        key = parse_item_id(decision.item_id)
        with self._lock:
            snap = self._snapshot()
            if key not in snap.queue:
                raise UnknownItemError(
                    f"no reviewable item {decision.item_id!r}"
                )
            prior = snap.decisions.get(decision.item_id, [])
            if any(
                event["reviewer_id"] == decision.reviewer_id for event in prior
            ):
                raise DecisionConflictError(
                    f"reviewer {decision.reviewer_id!r} already decided "
                    f"{decision.item_id!r}"
                )
            already_settled = bool(prior) or key in snap.decided
            if already_settled and not self.second_opinion:
                raise DecisionConflictError(
                    f"{decision.item_id!r} is already decided"
                )
            if self.second_opinion and len(prior) >= 2:
                raise DecisionConflictError(
                    f"{decision.item_id!r} already has a second opinion"
                )
            now = self.clock()
            self._purge_expired(now)
            lease = self._leases.get(decision.item_id)
            if lease is not None and lease[0] != decision.reviewer_id:
                raise DecisionConflictError(
                    f"{decision.item_id!r} is leased to another reviewer"
                )
            if not already_settled:
                self.store.append(
                    "stage",
                    problem_id=key[0],
                    k=key[1],
                    n=key[2],
                    stage=Stage.EXPERT_APPROVED.value,
                    passed=decision.verdict is ReviewVerdict.APPROVE,
                    payload={
                        "reviewer_id": decision.reviewer_id,
                        "verdict": decision.verdict.value,
                        "error_category": decision.error_category,
                    },
                )
            self.store.append(
                "decision",
                item_id=decision.item_id,
                problem_id=key[0],
                k=key[1],
                n=key[2],
                reviewer_id=decision.reviewer_id,
                verdict=decision.verdict.value,
                error_category=decision.error_category,
                duration_seconds=decision.duration_seconds,
                decided_at=now,
            )
            self._leases.pop(decision.item_id, None)
        return {
            "status": "recorded",
            "item_id": decision.item_id,
            "verdict": decision.verdict.value,
        }

    def get_item(self, item_id: str) -> dict:
        """Inspect one queued item and any decisions it has collected."""
        key = parse_item_id(item_id)
        snap = self._snapshot()
        if key not in snap.queue:
            raise UnknownItemError(f"no reviewable item {item_id!r}")
        public_decisions = [
            {
                "reviewer_id": event["reviewer_id"],
                "verdict": event["verdict"],
                "error_category": event["error_category"],
                "duration_seconds": event["duration_seconds"],
                "decided_at": event["decided_at"],
            }
            for event in snap.decisions.get(item_id, [])
        ]
        return {
            "item": self._build_item(key, snap).to_payload(),
            "decided": key in snap.decided,
            "decisions": public_decisions,
        }

    def stats(self) -> dict:
        """Campaign statistics over the fate-settling decisions."""
        snap = self._snapshot()
        decided = len(snap.decided)
        approved = sum(1 for event in snap.decided.values() if event["passed"])
        rejected = decided - approved
        counts = {category: 0 for category in REJECTION_CATEGORIES}
        for event in snap.decided.values():
            category = event["payload"].get("error_category")
            if not event["passed"] and category in counts:
                counts[category] += 1
        category_percentages = {
            category: (counts[category] * 100.0 / rejected) if rejected else 0.0
            for category in REJECTION_CATEGORIES
        }
        all_decisions = [
            event for events in snap.decisions.values() for event in events
        ]
        durations = [
            event["duration_seconds"]
            for event in all_decisions
            if event.get("duration_seconds") is not None
        ]
        annotators = {event["reviewer_id"] for event in all_decisions}
        metrics = AnnotationMetrics(
            annotator_count=len(annotators),
            decided=decided,
            approved=approved,
            mean_seconds_per_item=statistics.fmean(durations) if durations else None,
        )
        pending = sum(1 for key in snap.queue if key not in snap.decided)
        return {
            "decided": decided,
            "approved": approved,
            "rejected": rejected,
            "pending": pending,
            "preservation_rate": metrics.preservation_rate,
            "category_percentages": category_percentages,
            "mean_duration_seconds": metrics.mean_seconds_per_item,
            "annotator_count": metrics.annotator_count,
        }
