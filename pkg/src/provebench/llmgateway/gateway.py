"""The completion gateway: one entry point for every model call.

Three modes.  LIVE always hits the transport.  RECORD serves from the
cassette store when a recording exists and records live traffic otherwise,
so a recording session is resumable.  REPLAY never touches a transport and
fails loudly on a missing cassette.

Live calls are paced per endpoint (minimum gap of 1/rate_limit between
request starts), bounded by a per-endpoint concurrency semaphore, and
retried with exponential backoff on transport errors only.
"""

from __future__ import annotations

import enum
import threading
import time
from dataclasses import dataclass, field

from .. import errors
from .cassette import CassetteKey, CassetteStore, MissingCassetteError
from .config import ConfigError, ModelEndpoint
from .transport import Transport, TransportError, transport_for


class GatewayMode(enum.Enum):
    LIVE = "live"
    RECORD = "record"
    REPLAY = "replay"


class RetriesExhaustedError(TransportError):
    """Every retry attempt failed with a transport error."""


@dataclass
class _EndpointState:
    semaphore: threading.Semaphore
    pace_lock: threading.Lock = field(default_factory=threading.Lock)
    next_free: float = 0.0


class Gateway:
    def __init__(
        self,
        mode: GatewayMode,
        cassette_dir: str | None = None,
        transport: Transport | None = None,
        retry_attempts: int = 3,
        backoff_base: float = 0.5,
        backoff_factor: float = 2.0,
        clock=time.monotonic,
        sleep=time.sleep,
    ):
        if mode in (GatewayMode.RECORD, GatewayMode.REPLAY) and cassette_dir is None:
            raise ConfigError(f"{mode.value} mode needs a cassette directory")
        if retry_attempts < 1:
            raise ConfigError("retry_attempts must be at least 1")
        self.mode = mode
        self.store = CassetteStore(cassette_dir) if cassette_dir else None
        self._transport = transport
        self.retry_attempts = retry_attempts
        self.backoff_base = backoff_base
        self.backoff_factor = backoff_factor
        self._clock = clock
        self._sleep = sleep
        self._states: dict[str, _EndpointState] = {}
        self._states_lock = threading.Lock()
        self.transport_calls = 0

    def _state(self, endpoint: ModelEndpoint) -> _EndpointState:
        with self._states_lock:
            state = self._states.get(endpoint.model_id)
            if state is None:
                state = _EndpointState(threading.Semaphore(endpoint.max_concurrency))
                self._states[endpoint.model_id] = state
            return state

    def _pace(self, endpoint: ModelEndpoint, state: _EndpointState) -> None:
        if endpoint.rate_limit <= 0:
            return
        interval = 1.0 / endpoint.rate_limit
        with state.pace_lock:
            now = self._clock()
            start_at = max(now, state.next_free)
            state.next_free = start_at + interval
        delay = start_at - now
        if delay > 0:
            self._sleep(delay)

    def _call_live(self, endpoint: ModelEndpoint, prompt: str, sample_index: int) -> str:
        transport = self._transport or transport_for(endpoint)
        api_key = endpoint.api_key()
        state = self._state(endpoint)
        last_error: TransportError | None = None
        for attempt in range(1, self.retry_attempts + 1):
            self._pace(endpoint, state)
            with state.semaphore:
                try:
                    self.transport_calls += 1
                    return transport.complete_one(endpoint, prompt, sample_index, api_key)
                except TransportError as exc:
                    last_error = exc
            if attempt < self.retry_attempts:
                self._sleep(self.backoff_base * self.backoff_factor ** (attempt - 1))
        raise RetriesExhaustedError(
            f"{endpoint.model_id}: {self.retry_attempts} attempts failed "
            f"(last: {last_error})"
        ) from last_error

    def complete(self, endpoint: ModelEndpoint, prompt: str, n: int = 1) -> list[str]:
        """n completions for the prompt, in sample-index order."""
        if n < 0:
            raise ConfigError("n must be nonnegative")
        texts: list[str] = []
        for sample_index in range(n):
            key = CassetteKey.for_request(
                endpoint.model_id, prompt, sample_index, endpoint.temperature, endpoint.seed
            )
            if self.mode is GatewayMode.REPLAY:
                recorded = self.store.load(key)
                if recorded is None:
                    raise MissingCassetteError(key)
                texts.append(recorded)
                continue
            if self.mode is GatewayMode.RECORD:
                recorded = self.store.load(key)
                if recorded is not None:
                    texts.append(recorded)
                    continue
                text = self._call_live(endpoint, prompt, sample_index)
                self.store.save(key, prompt, text)
                texts.append(text)
                continue
            texts.append(self._call_live(endpoint, prompt, sample_index))
        return texts
