"""Aggregate failure-category frequencies across diagnosed proof attempts."""

from __future__ import annotations

from ..llmgateway import (
    CLASSIFICATION_TAXONOMY,
    ErrorDiagnosis,
    UnknownCategoryError,
)
from .metrics import EvalError


def aggregate_error_patterns(
    diagnoses: list[ErrorDiagnosis], sample_size: int
) -> dict[str, float]:
    """Share of sampled attempts exhibiting each failure category.

    One attempt may exhibit several categories, so the percentages can sum
    past 100.  Every taxonomy category appears in the output, at zero when
    nothing hit it.
    """
    if sample_size < 0:
        raise EvalError("sample_size must be nonnegative")
    if sample_size < len(diagnoses):
        raise EvalError(
            f"sample_size {sample_size} is smaller than the "
            f"{len(diagnoses)} diagnoses it covers"
        )
    counts = {category: 0 for category in CLASSIFICATION_TAXONOMY}
    for diagnosis in diagnoses:
        for category in dict.fromkeys(diagnosis.categories):
            if category not in counts:
                raise UnknownCategoryError(category)
            counts[category] += 1
    if sample_size == 0:
        return {category: 0.0 for category in CLASSIFICATION_TAXONOMY}
    return {
        category: counts[category] * 100.0 / sample_size
        for category in CLASSIFICATION_TAXONOMY
    }
