"""Percentage arithmetic and fixed-point rendering shared across reports.

Percentages are computed as ``count * 100 / total`` so that exact decimal
ratios (924/1000 and friends) come out as the correctly rounded double, and
rendered with banker's rounding so report tables are reproducible.
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal


def percent(count: int, total: int) -> float:
    """Exact percentage of ``count`` out of ``total``; 0/0 is defined as 100."""
    if total < 0 or count < 0:
        raise ValueError("counts must be nonnegative")
    if total == 0:
        return 100.0 if count == 0 else float("inf")
    return count * 100 / total


def format_percent(value: float, decimals: int = 1) -> str:
    """Render ``value`` with a fixed number of decimals, round-half-even."""
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_EVEN))
