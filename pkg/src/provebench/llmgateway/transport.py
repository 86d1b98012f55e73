"""Transports turn one completion request into text.

TransportError marks failures worth retrying (connection trouble, 5xx);
ProviderRequestError marks requests the provider rejected, which a retry
will not fix.
"""

from __future__ import annotations

import subprocess
from typing import Callable, Protocol

import httpx

from .. import errors
from .config import ConfigError, ModelEndpoint


class TransportError(errors.ProvebenchError):
    """Transient transport failure; safe to retry."""


class ProviderRequestError(errors.ProvebenchError):
    """The provider rejected the request; retrying cannot help."""


class Transport(Protocol):
    def complete_one(
        self,
        endpoint: ModelEndpoint,
        prompt: str,
        sample_index: int,
        api_key: str | None,
    ) -> str: ...


class HttpTransport:
    """POSTs a JSON completion request to the endpoint's base_url."""

    def __init__(self, client: httpx.Client | None = None, timeout: float = 120.0):
        self._client = client or httpx.Client(timeout=timeout)

    def complete_one(
        self,
        endpoint: ModelEndpoint,
        prompt: str,
        sample_index: int,
        api_key: str | None,
    ) -> str:
        if not endpoint.base_url:
            raise ConfigError(f"endpoint {endpoint.model_id!r} has no base_url")
        headers = {}
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        payload = {
            "model": endpoint.model_id,
            "prompt": prompt,
            "sample_index": sample_index,
            "temperature": endpoint.temperature,
            "seed": endpoint.seed,
        }
        try:
            response = self._client.post(endpoint.base_url, json=payload, headers=headers)
        except httpx.HTTPError as exc:
            raise TransportError(f"{endpoint.model_id}: {exc}") from exc
        if response.status_code >= 500:
            raise TransportError(
                f"{endpoint.model_id}: server error {response.status_code}"
            )
        if response.status_code >= 400:
            raise ProviderRequestError(
                f"{endpoint.model_id}: request rejected with {response.status_code}"
            )
        body = response.json()
        if "text" in body:
            return body["text"]
        try:
            return body["choices"][0]["text"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderRequestError(
                f"{endpoint.model_id}: response carries no completion text"
            ) from exc


class CommandTransport:
    """Runs the endpoint's command once per request, prompt on stdin."""

    def complete_one(
        self,
        endpoint: ModelEndpoint,
        prompt: str,
        sample_index: int,
        api_key: str | None,
    ) -> str:
        if not endpoint.command:
            raise ConfigError(f"endpoint {endpoint.model_id!r} has no command")
        try:
            result = subprocess.run(
                list(endpoint.command),
                input=prompt,
                capture_output=True,
                text=True,
                check=False,
            )
        except OSError as exc:
            raise TransportError(f"{endpoint.model_id}: {exc}") from exc
        if result.returncode != 0:
            raise TransportError(
                f"{endpoint.model_id}: command exited with {result.returncode}"
            )
        return result.stdout


class FunctionTransport:
    """Wraps a plain callable; the test seam."""

    def __init__(self, fn: Callable[[ModelEndpoint, str, int], str]):
        self._fn = fn

    def complete_one(
        self,
        endpoint: ModelEndpoint,
        prompt: str,
        sample_index: int,
        api_key: str | None,
    ) -> str:
        return self._fn(endpoint, prompt, sample_index)


def transport_for(endpoint: ModelEndpoint) -> Transport:
    """Pick the transport implied by the endpoint descriptor."""
    if endpoint.base_url:
        return HttpTransport()
    if endpoint.command:
        return CommandTransport()
    raise ConfigError(
        f"endpoint {endpoint.model_id!r} has neither base_url nor command; "
        "it can only be used for cassette replay"
    )
