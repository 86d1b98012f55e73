"""Line-delimited JSON wire protocol between scheduler and compiler backend.

One request line, one response line, matched by request_id.  Environments
are opaque integers handed out by the backend; passing one back as
parent_env makes the new command start from that environment instead of a
cold start, which is how the expensive root initialization gets shared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import errors

SEVERITIES = ("error", "warning", "info")


class ProtocolError(errors.ProvebenchError):
    """Malformed frame on the backend wire."""


@dataclass(frozen=True)
class Message:
    severity: str
    line: int
    col: int
    data: str

    def __post_init__(self):
        if self.severity not in SEVERITIES:
            raise ProtocolError(f"unknown severity {self.severity!r}")

    def to_wire(self) -> dict:
        return {
            "severity": self.severity,
            "pos": {"line": self.line, "col": self.col},
            "data": self.data,
        }

    @classmethod
    def from_wire(cls, raw: dict) -> "Message":
        try:
            pos = raw.get("pos") or {}
            return cls(
                severity=raw["severity"],
                line=int(pos.get("line", 0)),
                col=int(pos.get("col", 0)),
                data=raw.get("data", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"bad message frame: {raw!r}") from exc


@dataclass(frozen=True)
class BackendRequest:
    request_id: str
    command_text: str
    parent_env: int | None = None

    def to_wire(self) -> dict:
        frame: dict = {"request_id": self.request_id, "command_text": self.command_text}
        if self.parent_env is not None:
            frame["parent_env"] = self.parent_env
        return frame

    @classmethod
    def from_wire(cls, raw: dict) -> "BackendRequest":
        try:
            return cls(
                request_id=raw["request_id"],
                command_text=raw["command_text"],
                parent_env=raw.get("parent_env"),
            )
        except KeyError as exc:
            raise ProtocolError(f"bad request frame: missing {exc}") from exc


@dataclass(frozen=True)
class BackendResponse:
    request_id: str
    env: int
    messages: tuple[Message, ...] = ()
    remaining_goals: tuple[str, ...] = ()

    def to_wire(self) -> dict:
        return {
            "request_id": self.request_id,
            "env": self.env,
            "messages": [message.to_wire() for message in self.messages],
            "remaining_goals": list(self.remaining_goals),
        }

    @classmethod
    def from_wire(cls, raw: dict) -> "BackendResponse":
        try:
            return cls(
                request_id=raw["request_id"],
                env=int(raw["env"]),
                messages=tuple(Message.from_wire(m) for m in raw.get("messages", [])),
                remaining_goals=tuple(raw.get("remaining_goals", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"bad response frame: {raw!r}") from exc

    @property
    def error_messages(self) -> tuple[Message, ...]:
        return tuple(m for m in self.messages if m.severity == "error")
