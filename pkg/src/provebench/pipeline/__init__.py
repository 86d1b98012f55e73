"""Funnel orchestration and the append-only record store."""

from .records import (
    DISPOSITIONS,
    DISPROVED,
    DUPLICATE,
    ERRORED,
    FAILED_COMPILE,
    FAILED_SEMANTIC,
    READY_FOR_REVIEW,
    DisproofOutcome,
    DisproofResult,
    PipelineRecord,
    RecordConsistencyError,
    load_records,
    stage_survivor_counts,
)
from .runner import (
    DEFAULT_DISPROOF_BUDGET,
    FunnelConfig,
    disproof_filter,
    run_funnel,
)
from .store import EventStore, StoreError

__all__ = [
    "DEFAULT_DISPROOF_BUDGET",
    "DISPOSITIONS",
    "DISPROVED",
    "DUPLICATE",
    "ERRORED",
    "EventStore",
    "FAILED_COMPILE",
    "FAILED_SEMANTIC",
    "FunnelConfig",
    "DisproofOutcome",
    "DisproofResult",
    "PipelineRecord",
    "READY_FOR_REVIEW",
    "RecordConsistencyError",
    "StoreError",
    "disproof_filter",
    "load_records",
    "run_funnel",
    "stage_survivor_counts",
]
