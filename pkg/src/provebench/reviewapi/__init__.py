"""Expert-review HTTP service: queue leasing, decisions, campaign stats."""

from .http import create_app
from .service import (
    DEFAULT_LEASE_TTL_SECONDS,
    REJECTION_CATEGORIES,
    SCHEMA_VERSION,
    DecisionConflictError,
    DecisionValidationError,
    ReviewDecision,
    ReviewError,
    ReviewItem,
    ReviewService,
    ReviewVerdict,
    UnknownItemError,
    UnknownReviewerError,
    decision_from_payload,
    item_id_for,
    parse_item_id,
)

__all__ = [
    "DEFAULT_LEASE_TTL_SECONDS",
    "REJECTION_CATEGORIES",
    "SCHEMA_VERSION",
    "DecisionConflictError",
    "DecisionValidationError",
    "ReviewDecision",
    "ReviewError",
    "ReviewItem",
    "ReviewService",
    "ReviewVerdict",
    "UnknownItemError",
    "UnknownReviewerError",
    "create_app",
    "decision_from_payload",
    "item_id_for",
    "parse_item_id",
]
