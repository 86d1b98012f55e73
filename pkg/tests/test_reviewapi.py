"""Expert-review queue: leases, decisions, stats, and the HTTP surface."""

from __future__ import annotations

import threading

import pytest
from fastapi.testclient import TestClient

from provebench.corpus import Stage, funnel_stats
from provebench.pipeline import (
    EventStore,
    load_records,
    run_funnel,
    stage_survivor_counts,
)
from provebench.reviewapi import (
    SCHEMA_VERSION,
    DecisionConflictError,
    DecisionValidationError,
    REJECTION_CATEGORIES,
    ReviewDecision,
    ReviewService,
    ReviewVerdict,
    UnknownItemError,
    UnknownReviewerError,
    create_app,
    item_id_for,
    parse_item_id,
)

from tests.pipeline_harness import FunnelHarness

REVIEWERS = ["alice", "bob", "carol", "dana"]


class FakeClock:
    def __init__(self, now: float = 1000.0):
        self.now = now

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds


def build_review_store(tmp_path, ready_count: int = 4) -> EventStore:
    """A funnel-completed store with ``ready_count`` + 1 reviewable items.

    Queue order: item00..item{N-1}, then "flagged" (kept despite an
    ill-formed negation).  One extra problem is disproved and must never
    reach the queue.
    """
    harness = FunnelHarness()
    for i in range(ready_count):
        harness.add_problem("ready", pid=f"item{i:02d}")
    harness.add_problem("ill-formed", pid="flagged")
    harness.add_problem("disproved", pid="gone")
    store = EventStore(tmp_path / "events.jsonl")
    with harness.session() as session:
        run_funnel(
            harness.problems, store, harness.gateway(), session, harness.config()
        )
    return store


@pytest.fixture
def service_env(tmp_path):
    store = build_review_store(tmp_path)
    clock = FakeClock()
    service = ReviewService(store, REVIEWERS, lease_ttl=60.0, clock=clock)
    return store, service, clock


def approve(service, item_id, reviewer="alice", duration=None):
    return service.submit_decision(
        ReviewDecision(
            item_id=item_id,
            reviewer_id=reviewer,
            verdict=ReviewVerdict.APPROVE,
            duration_seconds=duration,
        )
    )


def reject(service, item_id, reviewer="alice", category="Condition Error", duration=None):
    return service.submit_decision(
        ReviewDecision(
            item_id=item_id,
            reviewer_id=reviewer,
            verdict=ReviewVerdict.REJECT,
            error_category=category,
            duration_seconds=duration,
        )
    )


# ------------------------------------------------------------------- leasing


def test_queue_serves_oldest_undecided_first(service_env):
    _store, service, _clock = service_env
    item = service.next_item("alice")
    assert item.item_id == "item00:0:0"
    # polling again refreshes the same lease rather than advancing
    assert service.next_item("alice").item_id == "item00:0:0"


def test_concurrent_reviewers_get_disjoint_items(service_env):
    _store, service, _clock = service_env
    first = service.next_item("alice")
    second = service.next_item("bob")
    assert first.item_id != second.item_id
    assert second.item_id == "item01:0:0"


def test_parallel_polling_never_double_leases(service_env):
    _store, service, _clock = service_env
    results = {}

    def poll(reviewer):
        results[reviewer] = service.next_item(reviewer).item_id

    threads = [threading.Thread(target=poll, args=(r,)) for r in REVIEWERS]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert len(set(results.values())) == len(REVIEWERS)


def test_expired_lease_reoffers_the_item(service_env):
    _store, service, clock = service_env
    assert service.next_item("alice").item_id == "item00:0:0"
    clock.advance(61)  # past the 60-second ttl
    assert service.next_item("bob").item_id == "item00:0:0"


def test_active_lease_blocks_other_reviewers(service_env):
    _store, service, clock = service_env
    assert service.next_item("alice").item_id == "item00:0:0"
    clock.advance(59)  # still within the ttl
    assert service.next_item("bob").item_id == "item01:0:0"


def test_unknown_reviewer_is_rejected(service_env):
    _store, service, _clock = service_env
    with pytest.raises(UnknownReviewerError, match="mallory"):
        service.next_item("mallory")
    with pytest.raises(UnknownReviewerError, match="mallory"):
        approve(service, "item00:0:0", reviewer="mallory")


def test_empty_queue_returns_nothing(service_env):
    _store, service, _clock = service_env
    queue = ["item00:0:0", "item01:0:0", "item02:0:0", "item03:0:0", "flagged:0:0"]
    for item_id in queue:
        approve(service, item_id)
    assert service.next_item("bob") is None


def test_disproved_candidates_never_enter_the_queue(service_env):
    _store, service, _clock = service_env
    seen = []
    while True:
        item = service.next_item("alice")
        if item is None:
            break
        seen.append(item.item_id)
        approve(service, item.item_id)
    assert "gone:0:0" not in seen
    assert len(seen) == 5


def test_review_item_carries_the_full_context(service_env):
    _store, service, _clock = service_env
    item = service.next_item("alice")
    assert "[item00]" in item.nl_statement
    assert item.statement_source.startswith("import Mathlib")
    assert "theorem item00" in item.statement_source
    assert len(item.votes) == 3
    assert all(vote["verdict"] == "True" for vote in item.votes)
    assert item.disproof["outcome"] == "NegationUnproved"

    detail = service.get_item("flagged:0:0")
    assert detail["item"]["disproof"]["outcome"] == "NegationIllFormed"
    assert detail["decided"] is False
    assert detail["decisions"] == []


def test_item_ids_round_trip():
    assert parse_item_id(item_id_for("p:with:colons", 1, 2)) == ("p:with:colons", 1, 2)
    with pytest.raises(UnknownItemError, match="malformed"):
        parse_item_id("no-indices")


# ------------------------------------------------------------------ decisions


def test_approval_settles_the_record_and_the_funnel(service_env):
    store, service, _clock = service_env
    before = stage_survivor_counts(load_records(store.events()))
    assert before[Stage.EXPERT_APPROVED] == 0

    ack = approve(service, "item00:0:0")
    assert ack == {
        "status": "recorded",
        "item_id": "item00:0:0",
        "verdict": "approve",
    }
    records = {rec.key: rec for rec in load_records(store.events())}
    record = records[("item00", 0, 0)]
    assert record.final_stage is Stage.EXPERT_APPROVED
    assert record.passed(Stage.EXPERT_APPROVED)
    after = stage_survivor_counts(load_records(store.events()))
    assert after[Stage.EXPERT_APPROVED] == 1


def test_rejection_carries_its_category(service_env):
    store, service, _clock = service_env
    reject(service, "item01:0:0", category="Condition Error")
    records = {rec.key: rec for rec in load_records(store.events())}
    record = records[("item01", 0, 0)]
    assert record.final_stage is Stage.EXPERT_APPROVED
    assert not record.passed(Stage.EXPERT_APPROVED)
    payload = record.stage_results[Stage.EXPERT_APPROVED]
    assert payload["error_category"] == "Condition Error"
    assert payload["verdict"] == "reject"


def test_rejection_requires_a_known_category():
    with pytest.raises(DecisionValidationError, match="must name"):
        ReviewDecision(
            item_id="x:0:0", reviewer_id="alice", verdict=ReviewVerdict.REJECT
        )
    with pytest.raises(DecisionValidationError, match="unknown error category"):
        ReviewDecision(
            item_id="x:0:0",
            reviewer_id="alice",
            verdict=ReviewVerdict.REJECT,
            error_category="Vibes",
        )
    with pytest.raises(DecisionValidationError, match="must not carry"):
        ReviewDecision(
            item_id="x:0:0",
            reviewer_id="alice",
            verdict=ReviewVerdict.APPROVE,
            error_category="Condition Error",
        )


def test_duplicate_decisions_conflict(service_env):
    _store, service, _clock = service_env
    approve(service, "item00:0:0")
    with pytest.raises(DecisionConflictError, match="already decided"):
        approve(service, "item00:0:0")  # same reviewer
    with pytest.raises(DecisionConflictError, match="already decided"):
        reject(service, "item00:0:0", reviewer="bob")  # one decision per item


def test_decided_items_leave_the_queue(service_env):
    _store, service, _clock = service_env
    approve(service, "item00:0:0")
    assert service.next_item("alice").item_id == "item01:0:0"


def test_submitting_against_an_active_foreign_lease_conflicts(service_env):
    _store, service, _clock = service_env
    assert service.next_item("alice").item_id == "item00:0:0"
    with pytest.raises(DecisionConflictError, match="leased to another"):
        approve(service, "item00:0:0", reviewer="bob")


def test_submitting_after_the_foreign_lease_expires_is_accepted(service_env):
    _store, service, clock = service_env
    assert service.next_item("alice").item_id == "item00:0:0"
    clock.advance(61)
    ack = approve(service, "item00:0:0", reviewer="bob")
    assert ack["status"] == "recorded"


def test_unknown_items_are_reported(service_env):
    _store, service, _clock = service_env
    with pytest.raises(UnknownItemError, match="ghost"):
        approve(service, "ghost:0:0")
    with pytest.raises(UnknownItemError, match="gone"):
        approve(service, "gone:0:0")  # exists, but was disproved upstream


def test_second_opinion_mode_allows_one_extra_reviewer(tmp_path):
    store = build_review_store(tmp_path)
    service = ReviewService(
        store, REVIEWERS, lease_ttl=60.0, clock=FakeClock(), second_opinion=True
    )
    approve(service, "item00:0:0", reviewer="alice")
    # a different reviewer may add a second opinion; the first verdict settled
    # the record, so the funnel still counts one approval
    reject(service, "item00:0:0", reviewer="bob", category="Domain Error")
    records = {rec.key: rec for rec in load_records(store.events())}
    assert records[("item00", 0, 0)].passed(Stage.EXPERT_APPROVED)
    with pytest.raises(DecisionConflictError, match="already decided"):
        approve(service, "item00:0:0", reviewer="alice")
    with pytest.raises(DecisionConflictError, match="second opinion"):
        approve(service, "item00:0:0", reviewer="carol")
    detail = service.get_item("item00:0:0")
    assert [d["reviewer_id"] for d in detail["decisions"]] == ["alice", "bob"]


# ---------------------------------------------------------------------- stats


def test_stats_empty_campaign(service_env):
    _store, service, _clock = service_env
    stats = service.stats()
    assert stats["decided"] == 0
    assert stats["approved"] == 0
    assert stats["rejected"] == 0
    assert stats["pending"] == 5
    assert stats["preservation_rate"] is None
    assert stats["mean_duration_seconds"] is None
    assert stats["annotator_count"] == 0
    assert set(stats["category_percentages"]) == set(REJECTION_CATEGORIES)
    assert all(v == 0.0 for v in stats["category_percentages"].values())


def test_stats_track_a_mixed_campaign(service_env):
    _store, service, _clock = service_env
    approve(service, "item00:0:0", reviewer="alice", duration=30.0)
    approve(service, "item01:0:0", reviewer="bob", duration=60.0)
    approve(service, "item02:0:0", reviewer="alice", duration=30.0)
    reject(service, "item03:0:0", reviewer="bob", category="Condition Error")
    reject(service, "flagged:0:0", reviewer="alice", category="Domain Error", duration=40.0)

    stats = service.stats()
    assert stats["decided"] == 5
    assert stats["approved"] == 3
    assert stats["rejected"] == 2
    assert stats["pending"] == 0
    assert stats["preservation_rate"] == pytest.approx(3 / 5)
    assert stats["category_percentages"]["Condition Error"] == 50.0
    assert stats["category_percentages"]["Domain Error"] == 50.0
    assert stats["category_percentages"]["Condition Redundancy"] == 0.0
    assert stats["mean_duration_seconds"] == pytest.approx(40.0)
    assert stats["annotator_count"] == 2


def test_preservation_rate_matches_the_funnel_report(service_env):
    store, service, _clock = service_env
    approve(service, "item00:0:0")
    approve(service, "item01:0:0")
    reject(service, "item02:0:0")
    approve(service, "item03:0:0")
    reject(service, "flagged:0:0", category="Lack of Geometric Background")

    records = load_records(store.events())
    report = funnel_stats(stage_survivor_counts(records), initial_count=len(records))
    assert service.stats()["preservation_rate"] == pytest.approx(
        report.relative_retention(Stage.EXPERT_APPROVED)
    )


def test_planted_category_counts_recover_exactly(tmp_path):
    store = build_review_store(tmp_path, ready_count=9)
    service = ReviewService(store, REVIEWERS, lease_ttl=60.0, clock=FakeClock())
    planted = {
        "Condition Error": 5,
        "Expression Error (Lean Syntax)": 3,
        "Propositional Logic Error": 2,
    }
    queue = [f"item{i:02d}:0:0" for i in range(9)] + ["flagged:0:0"]
    index = 0
    for category, count in planted.items():
        for _ in range(count):
            reject(service, queue[index], category=category)
            index += 1
    percentages = service.stats()["category_percentages"]
    assert percentages["Condition Error"] == pytest.approx(50.0)
    assert percentages["Expression Error (Lean Syntax)"] == pytest.approx(30.0)
    assert percentages["Propositional Logic Error"] == pytest.approx(20.0)
    assert sum(percentages.values()) == pytest.approx(100.0)


# ----------------------------------------------------------------------- HTTP


@pytest.fixture
def client(service_env):
    _store, service, _clock = service_env
    return TestClient(create_app(service))


def test_http_queue_next(client):
    response = client.get("/api/queue/next", params={"reviewer": "alice"})
    assert response.status_code == 200
    body = response.json()
    assert body["schema"] == SCHEMA_VERSION
    assert body["item"]["item_id"] == "item00:0:0"
    assert "[item00]" in body["item"]["nl_statement"]

    unauthorized = client.get("/api/queue/next", params={"reviewer": "mallory"})
    assert unauthorized.status_code == 401


def test_http_decision_flow(client):
    ok = client.post(
        "/api/decision",
        json={
            "schema": SCHEMA_VERSION,
            "item_id": "item00:0:0",
            "reviewer_id": "alice",
            "verdict": "approve",
            "duration_seconds": 21.5,
        },
    )
    assert ok.status_code == 200
    assert ok.json()["status"] == "recorded"

    duplicate = client.post(
        "/api/decision",
        json={
            "schema": SCHEMA_VERSION,
            "item_id": "item00:0:0",
            "reviewer_id": "bob",
            "verdict": "approve",
        },
    )
    assert duplicate.status_code == 409

    uncategorised = client.post(
        "/api/decision",
        json={
            "schema": SCHEMA_VERSION,
            "item_id": "item01:0:0",
            "reviewer_id": "alice",
            "verdict": "reject",
        },
    )
    assert uncategorised.status_code == 422

    unversioned = client.post(
        "/api/decision",
        json={"item_id": "item01:0:0", "reviewer_id": "alice", "verdict": "approve"},
    )
    assert unversioned.status_code == 400

    ghost = client.post(
        "/api/decision",
        json={
            "schema": SCHEMA_VERSION,
            "item_id": "ghost:0:0",
            "reviewer_id": "alice",
            "verdict": "approve",
        },
    )
    assert ghost.status_code == 404


def test_http_stats_and_item(client):
    client.post(
        "/api/decision",
        json={
            "schema": SCHEMA_VERSION,
            "item_id": "item00:0:0",
            "reviewer_id": "alice",
            "verdict": "reject",
            "error_category": "Condition Error",
        },
    )
    stats = client.get("/api/stats").json()
    assert stats["schema"] == SCHEMA_VERSION
    assert stats["decided"] == 1
    assert stats["rejected"] == 1
    assert stats["category_percentages"]["Condition Error"] == 100.0

    detail = client.get("/api/item/item00:0:0")
    assert detail.status_code == 200
    body = detail.json()
    assert body["decided"] is True
    assert body["decisions"][0]["verdict"] == "reject"

    assert client.get("/api/item/ghost:0:0").status_code == 404
