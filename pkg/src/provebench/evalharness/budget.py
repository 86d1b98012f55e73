"""Sampling-budget descriptors for Pass@K evaluation.

A budget is either a flat number of independent proof samples per problem
(single-pass generation) or a best-first-search shape N×S×T — N search
attempts, S tactics generated per expansion, T iterations — whose product
is the effective sample count.  Both describe how many of a problem's
recorded attempts count toward Pass@K.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

from .. import errors


class BudgetError(errors.ProvebenchError):
    """A sampling budget is malformed."""


class BudgetKind(enum.Enum):
    SINGLE_PASS = "single-pass"
    BEST_FIRST_SEARCH = "best-first-search"


_SEPARATOR = re.compile(r"[×xX]")


@dataclass(frozen=True)
class BudgetSpec:
    """How many proof attempts per problem count toward Pass@K."""

    kind: BudgetKind
    components: tuple[int, ...]

    def __post_init__(self):
        expected = 1 if self.kind is BudgetKind.SINGLE_PASS else 3
        if len(self.components) != expected:
            raise BudgetError(
                f"a {self.kind.value} budget takes {expected} component(s), "
                f"got {len(self.components)}"
            )
        for value in self.components:
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise BudgetError(
                    f"budget components must be integers >= 1, got {value!r}"
                )

    @classmethod
    def single_pass(cls, samples: int) -> "BudgetSpec":
        return cls(BudgetKind.SINGLE_PASS, (samples,))

    @classmethod
    def best_first_search(
        cls, attempts: int, tactics_per_expansion: int, iterations: int
    ) -> "BudgetSpec":
        return cls(
            BudgetKind.BEST_FIRST_SEARCH,
            (attempts, tactics_per_expansion, iterations),
        )

    @classmethod
    def parse(cls, text: str) -> "BudgetSpec":
        """Parse ``"K"`` or ``"N×S×T"`` (an ASCII ``x`` separates too)."""
        parts = [part.strip() for part in _SEPARATOR.split(text.strip())]
        try:
            values = tuple(int(part) for part in parts)
        except ValueError as exc:
            raise BudgetError(f"budget {text!r} is not numeric") from exc
        if len(values) == 1:
            return cls.single_pass(values[0])
        if len(values) == 3:
            return cls.best_first_search(*values)
        raise BudgetError(f"budget {text!r} must be a single K or N×S×T")

    @property
    def effective_k(self) -> int:
        """Attempts counted per problem; a search budget multiplies out."""
        return math.prod(self.components)

    @property
    def label(self) -> str:
        """The budget as printed in report tables, e.g. ``3200`` or ``1×32×100``."""
        return "×".join(str(value) for value in self.components)

    def _component(self, kind: BudgetKind, index: int, name: str) -> int:
        if self.kind is not kind:
            raise BudgetError(f"{name} only applies to {kind.value} budgets")
        return self.components[index]

    @property
    def samples(self) -> int:
        return self._component(BudgetKind.SINGLE_PASS, 0, "samples")

    @property
    def attempts(self) -> int:
        return self._component(BudgetKind.BEST_FIRST_SEARCH, 0, "attempts")

    @property
    def tactics_per_expansion(self) -> int:
        return self._component(
            BudgetKind.BEST_FIRST_SEARCH, 1, "tactics_per_expansion"
        )

    @property
    def iterations(self) -> int:
        return self._component(BudgetKind.BEST_FIRST_SEARCH, 2, "iterations")
