"""Append-only event log backing funnel runs and review decisions.

One JSON object per line, written with a fixed serialization (sorted keys,
compact separators) so that two runs producing the same events produce the
same bytes.  Every event carries a monotonically increasing sequence number
and a logical timestamp equal to it; wall-clock time never reaches the
file, which is what makes interrupted-and-resumed runs byte-identical to
uninterrupted ones.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from .. import errors


class StoreError(errors.ProvebenchError):
    """The event log is unreadable or internally inconsistent."""


def _serialize(event: dict) -> str:
    return json.dumps(event, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


class EventStore:
    """Single-writer append-only JSONL log with in-memory reads."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._events: list[dict] = []
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    event = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise StoreError(
                        f"{self.path}:{line_number}: invalid JSON ({exc.msg})"
                    ) from exc
                expected = len(self._events) + 1
                if event.get("seq") != expected:
                    raise StoreError(
                        f"{self.path}:{line_number}: expected seq {expected}, "
                        f"got {event.get('seq')!r}"
                    )
                self._events.append(event)

    def __len__(self) -> int:
        return len(self._events)

    def events(self, kind: str | None = None) -> list[dict]:
        """Snapshot of all events, optionally filtered by kind."""
        with self._lock:
            snapshot = list(self._events)
        if kind is None:
            return snapshot
        return [event for event in snapshot if event.get("kind") == kind]

    def append(self, kind: str, **fields) -> dict:
        """Persist one event; seq and the logical timestamp are assigned here."""
        if "seq" in fields or "ts" in fields or "kind" in fields:
            raise StoreError("seq, ts, and kind are store-assigned fields")
        with self._lock:
            event = {"seq": len(self._events) + 1, "ts": len(self._events) + 1,
                     "kind": kind, **fields}
            line = _serialize(event)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(line + "\n")
            self._events.append(event)
        return event
