"""Survival accounting across the candidate filtering funnel.

A funnel report answers two questions per stage: what fraction of the
initial candidate pool is still alive (absolute rate), and what fraction of
the previous stage survived this one (relative retention).  The denominator
for absolute rates is an explicit argument rather than the first stage
count, so callers decide whether parse failures and friends count as part
of the initial pool.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .. import errors
from ..formatting import format_percent
from .models import STAGE_ORDER, Stage


class FunnelConsistencyError(errors.ProvebenchError):
    """Stage counts that no sequential filter could have produced."""


def _ratio(count: int, base: int) -> float:
    # A filter over nothing keeps everything: 0/0 is 1.0 so that relative
    # retentions always multiply back to the absolute rate.
    if base == 0:
        return 1.0
    return count / base


@dataclass(frozen=True)
class FunnelReport:
    initial_count: int
    counts: Mapping[Stage, int]

    def count(self, stage: Stage) -> int:
        return self.counts.get(stage, 0)

    def absolute_rate(self, stage: Stage) -> float:
        """Survivors at ``stage`` as a fraction of the initial pool."""
        return _ratio(self.count(stage), self.initial_count)

    def relative_retention(self, stage: Stage) -> float:
        """Survivors at ``stage`` as a fraction of the stage before it."""
        index = STAGE_ORDER.index(stage)
        previous = self.initial_count if index == 0 else self.count(STAGE_ORDER[index - 1])
        return _ratio(self.count(stage), previous)

    def rows(self) -> list[tuple[str, int, str, str]]:
        """(stage, count, absolute %, relative %) per stage, formatted."""
        return [
            (
                stage.value,
                self.count(stage),
                format_percent(self.absolute_rate(stage) * 100),
                format_percent(self.relative_retention(stage) * 100),
            )
            for stage in STAGE_ORDER
        ]


def funnel_stats(stage_counts: Mapping[Stage, int], initial_count: int) -> FunnelReport:
    """Build a FunnelReport, rejecting impossible count sequences."""
    if initial_count < 0:
        raise FunnelConsistencyError("initial_count must be nonnegative")
    for stage in stage_counts:
        if stage_counts[stage] < 0:
            raise FunnelConsistencyError(f"negative count at {stage.value}")
    counts = {stage: stage_counts.get(stage, 0) for stage in STAGE_ORDER}
    previous_label = "initial pool"
    previous_count = initial_count
    for stage in STAGE_ORDER:
        if counts[stage] > previous_count:
            raise FunnelConsistencyError(
                f"{stage.value} count {counts[stage]} exceeds {previous_label} "
                f"count {previous_count}"
            )
        previous_label = stage.value
        previous_count = counts[stage]
    return FunnelReport(initial_count=initial_count, counts=counts)
