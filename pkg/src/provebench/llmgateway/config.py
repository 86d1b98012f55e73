"""Model endpoint descriptors and their on-disk configuration format.

Secrets never live in config files: an endpoint names the environment
variable holding its API key and the gateway reads it at call time.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .. import errors


class ConfigError(errors.ProvebenchError):
    """Endpoint configuration is unusable."""


class EndpointRole(enum.Enum):
    AUTOFORMALIZER = "autoformalizer"
    JUDGE = "judge"
    PROVER = "prover"
    DIAGNOSER = "diagnoser"
    CLASSIFIER = "classifier"


@dataclass(frozen=True)
class ModelEndpoint:
    model_id: str
    role: EndpointRole
    base_url: str | None = None
    command: tuple[str, ...] | None = None
    api_key_env: str | None = None
    rate_limit: float = 0.0
    max_concurrency: int = 4
    temperature: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.model_id:
            raise ConfigError("endpoint needs a model_id")
        if self.base_url and self.command:
            raise ConfigError(
                f"endpoint {self.model_id!r} sets both base_url and command; pick one"
            )
        if self.rate_limit < 0:
            raise ConfigError(f"endpoint {self.model_id!r} has a negative rate_limit")
        if self.max_concurrency < 1:
            raise ConfigError(f"endpoint {self.model_id!r} needs max_concurrency >= 1")

    def api_key(self) -> str | None:
        """Resolve the key from the environment; never logs or stores it."""
        if self.api_key_env is None:
            return None
        value = os.environ.get(self.api_key_env)
        if value is None:
            raise ConfigError(f"environment variable {self.api_key_env} is not set")
        return value


def _endpoint_from_record(record: dict, index: int) -> ModelEndpoint:
    try:
        role = EndpointRole(record["role"])
    except KeyError:
        raise ConfigError(f"endpoint #{index} is missing a role") from None
    except ValueError:
        raise ConfigError(
            f"endpoint #{index} has unknown role {record['role']!r}"
        ) from None
    command = record.get("command")
    return ModelEndpoint(
        model_id=record.get("model_id", ""),
        role=role,
        base_url=record.get("base_url"),
        command=tuple(command) if command else None,
        api_key_env=record.get("api_key_env"),
        rate_limit=float(record.get("rate_limit", 0.0)),
        max_concurrency=int(record.get("max_concurrency", 4)),
        temperature=float(record.get("temperature", 0.0)),
        seed=int(record.get("seed", 0)),
    )


def load_endpoints(path: str | Path) -> list[ModelEndpoint]:
    """Read a JSON endpoint config: {"endpoints": [...]}."""
    with open(path, encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(raw, dict) or not isinstance(raw.get("endpoints"), list):
        raise ConfigError(f"{path}: expected an object with an 'endpoints' list")
    return [
        _endpoint_from_record(record, index)
        for index, record in enumerate(raw["endpoints"], start=1)
    ]


def endpoints_by_role(
    endpoints: list[ModelEndpoint], role: EndpointRole
) -> list[ModelEndpoint]:
    return [endpoint for endpoint in endpoints if endpoint.role is role]
