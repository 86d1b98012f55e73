"""Recorded completions, one file per request key.

The key is (model_id, SHA-256 of the prompt, sample_index, temperature,
seed): everything that shapes a completion and nothing that does not.
Replays of the same logical request are byte-stable regardless of prompt
length or filesystem-hostile model names.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .. import errors

_SLUG_RE = re.compile(r"[^A-Za-z0-9._-]+")


class MissingCassetteError(errors.ProvebenchError):
    def __init__(self, key: "CassetteKey"):
        self.key = key
        super().__init__(f"no cassette recorded for {key.describe()}")


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CassetteKey:
    model_id: str
    prompt_sha256: str
    sample_index: int
    temperature: float
    seed: int

    @classmethod
    def for_request(
        cls, model_id: str, prompt: str, sample_index: int, temperature: float, seed: int
    ) -> "CassetteKey":
        return cls(model_id, prompt_hash(prompt), sample_index, temperature, seed)

    def filename(self) -> str:
        slug = _SLUG_RE.sub("-", self.model_id)
        return (
            f"{slug}__{self.prompt_sha256[:20]}__i{self.sample_index}"
            f"__t{self.temperature!r}__s{self.seed}.json"
        )

    def describe(self) -> str:
        return (
            f"model={self.model_id} prompt_sha256={self.prompt_sha256[:20]} "
            f"sample_index={self.sample_index} temperature={self.temperature!r} "
            f"seed={self.seed}"
        )


class CassetteStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _path(self, key: CassetteKey) -> Path:
        return self.root / key.filename()

    def load(self, key: CassetteKey) -> str | None:
        """Recorded completion text, or None when nothing is on file."""
        path = self._path(key)
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        return data["completions"][0]["text"]

    def save(self, key: CassetteKey, prompt: str, text: str) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        payload = {
            "model_id": key.model_id,
            "prompt": prompt,
            "sample_index": key.sample_index,
            "temperature": key.temperature,
            "seed": key.seed,
            "completions": [{"text": text}],
        }
        with open(self._path(key), "w", encoding="utf-8") as handle:
            json.dump(payload, handle, ensure_ascii=False, indent=2)
            handle.write("\n")
