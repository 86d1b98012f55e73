"""Base exception for everything raised on purpose by this package."""

from __future__ import annotations


class ProvebenchError(Exception):
    """Root of the package exception hierarchy."""
