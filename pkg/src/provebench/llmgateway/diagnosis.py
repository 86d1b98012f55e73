"""Two-stage failure diagnosis for rejected proof attempts.

Stage one looks at a batch of failed proofs from one prover and extracts
recurring failure features.  Stage two classifies each individual proof
into a fixed five-category taxonomy, guided by those features.  Reply
parsing is deliberately lenient about wrapping (prose, code fences) but
strict about content: unknown categories and shape mismatches are errors,
not warnings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from ..errors import ProvebenchError
from .config import ModelEndpoint
from .gateway import Gateway
from .prompts import build_error_classification_prompt, build_error_feature_prompt

# Stage-two labels. Protocol data: classifier replies are validated
# against these exact strings.
CLASSIFICATION_TAXONOMY = (
    "Improper usage of the automation tactics",
    "Incomplete or Placeholder Proof Steps",
    "Misuse of rewriting/simplification tactics",
    "Inadequate handling of inequalities",
    "Redundant hypothesis introductions",
)

# Stage one reads exactly this many failed proofs per batch.
FEATURE_BATCH_SIZE = 5

_FENCED_JSON_RE = re.compile(r"```(?:json)?\s*\n(.*?)```", re.DOTALL)


class DiagnosisFormatError(ProvebenchError):
    """Classifier reply does not contain a well-formed diagnosis object."""

    def __init__(self, reason: str, raw_text: str):
        super().__init__(reason)
        self.reason = reason
        self.raw_text = raw_text


class UnknownCategoryError(ProvebenchError):
    def __init__(self, category: str):
        super().__init__(f"category not in the classification taxonomy: {category!r}")
        self.category = category


class FeatureBatchSizeError(ProvebenchError):
    def __init__(self, got: int):
        super().__init__(
            f"feature diagnosis takes exactly {FEATURE_BATCH_SIZE} snippets, got {got}"
        )
        self.got = got


@dataclass(frozen=True)
class ErrorDiagnosis:
    """One classified failure: taxonomy labels with aligned confidences."""

    categories: tuple[str, ...]
    confidence: tuple[float, ...]
    explanation: str = ""

    def __post_init__(self):
        if len(self.categories) != len(self.confidence):
            raise DiagnosisFormatError(
                f"{len(self.categories)} categories but "
                f"{len(self.confidence)} confidence values",
                "",
            )
        for category in self.categories:
            if category not in CLASSIFICATION_TAXONOMY:
                raise UnknownCategoryError(category)
        for value in self.confidence:
            if not 0.0 <= value <= 1.0:
                raise DiagnosisFormatError(
                    f"confidence {value!r} outside [0, 1]", ""
                )


def _extract_json(raw: str):
    """Parse JSON out of a model reply, tolerating prose and code fences."""
    candidates = [raw]
    for match in _FENCED_JSON_RE.finditer(raw):
        candidates.append(match.group(1))
    # Last resort: widest brace-to-brace or bracket-to-bracket span.
    for open_ch, close_ch in (("{", "}"), ("[", "]")):
        start = raw.find(open_ch)
        end = raw.rfind(close_ch)
        if start != -1 and end > start:
            candidates.append(raw[start : end + 1])
    for candidate in candidates:
        try:
            return json.loads(candidate)
        except json.JSONDecodeError:
            continue
    raise DiagnosisFormatError("no JSON payload found in reply", raw)


def parse_error_classification(raw: str) -> ErrorDiagnosis:
    """Validate a stage-two classifier reply into an ErrorDiagnosis."""
    payload = _extract_json(raw)
    if not isinstance(payload, dict):
        raise DiagnosisFormatError("diagnosis payload is not an object", raw)
    categories = payload.get("categories")
    confidence = payload.get("confidence")
    if not isinstance(categories, list) or not all(
        isinstance(c, str) for c in categories
    ):
        raise DiagnosisFormatError('"categories" must be a list of strings', raw)
    if not isinstance(confidence, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in confidence
    ):
        raise DiagnosisFormatError('"confidence" must be a list of numbers', raw)
    if len(categories) != len(confidence):
        raise DiagnosisFormatError(
            f"{len(categories)} categories but {len(confidence)} confidence values",
            raw,
        )
    explanation = payload.get("explanation", "")
    if not isinstance(explanation, str):
        raise DiagnosisFormatError('"explanation" must be a string', raw)
    for value in confidence:
        if not 0.0 <= value <= 1.0:
            raise DiagnosisFormatError(f"confidence {value!r} outside [0, 1]", raw)
    return ErrorDiagnosis(
        categories=tuple(categories),
        confidence=tuple(float(v) for v in confidence),
        explanation=explanation,
    )


def parse_feature_list(raw: str) -> list[str]:
    """Validate a stage-one reply into a list of feature labels."""
    payload = _extract_json(raw)
    if not isinstance(payload, list) or not all(
        isinstance(item, str) for item in payload
    ):
        raise DiagnosisFormatError("feature reply must be a JSON list of strings", raw)
    return payload


def diagnose_features(
    gateway: Gateway, snippets: list[str], model: ModelEndpoint
) -> list[str]:
    """Stage one: recurring failure features across one prover's batch."""
    if len(snippets) != FEATURE_BATCH_SIZE:
        raise FeatureBatchSizeError(len(snippets))
    prompt = build_error_feature_prompt(snippets)
    (reply,) = gateway.complete(model, prompt, n=1)
    return parse_feature_list(reply)


def two_stage_diagnosis(
    gateway: Gateway,
    snippets: list[str],
    diagnoser: ModelEndpoint,
    classifier: ModelEndpoint,
) -> list[ErrorDiagnosis]:
    """Feature extraction over the batch, then one classification each.

    Returns diagnoses aligned with the input snippet order.
    """
    features = diagnose_features(gateway, snippets, diagnoser)
    diagnoses = []
    for snippet in snippets:
        prompt = build_error_classification_prompt(
            snippet, features, CLASSIFICATION_TAXONOMY
        )
        (reply,) = gateway.complete(classifier, prompt, n=1)
        diagnoses.append(parse_error_classification(reply))
    return diagnoses
