"""Core record types for the problem corpus and funnel bookkeeping."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .. import errors
from . import taxonomy

CHAIN_ARROW = "->"
MAX_CHAINS_PER_PROBLEM = 3


class Difficulty(enum.Enum):
    HIGH_SCHOOL = "high_school_olympiad"
    UNDERGRADUATE = "undergraduate"


class Stage(enum.Enum):
    """Funnel stages in pipeline order."""

    AUTOFORMALIZED = "Autoformalized"
    COMPILE_CHECKED = "CompileChecked"
    SEMANTIC_VERIFIED = "SemanticVerified"
    DISPROOF_SURVIVED = "DisproofSurvived"
    EXPERT_APPROVED = "ExpertApproved"


STAGE_ORDER: tuple[Stage, ...] = tuple(Stage)


@dataclass(frozen=True)
class DomainChain:
    """A root-anchored path through the classification tree."""

    nodes: tuple[str, ...]

    def __post_init__(self):
        taxonomy.validate_chain(self.nodes)

    @property
    def top_level(self) -> str:
        """The node directly under the root; the stratification key."""
        return self.nodes[1]

    def render(self) -> str:
        return f" {CHAIN_ARROW} ".join(self.nodes)

    @classmethod
    def parse(cls, text: str) -> "DomainChain":
        nodes = tuple(part.strip() for part in text.split(CHAIN_ARROW))
        return cls(nodes)


class ProblemValidationError(errors.ProvebenchError):
    """A problem record violates a structural invariant."""


@dataclass(frozen=True)
class Problem:
    id: str
    source: str
    nl_statement: str
    difficulty: Difficulty
    domains: tuple[DomainChain, ...] = ()
    reference_answer: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ProblemValidationError("problem id must be nonempty")
        if not self.nl_statement:
            raise ProblemValidationError(f"problem {self.id!r} has an empty statement")
        if len(self.domains) > MAX_CHAINS_PER_PROBLEM:
            raise ProblemValidationError(
                f"problem {self.id!r} carries {len(self.domains)} domain chains, "
                f"limit is {MAX_CHAINS_PER_PROBLEM}"
            )

    @property
    def top_level_domains(self) -> tuple[str, ...]:
        """Distinct second-node domains, in first-appearance order."""
        seen: list[str] = []
        for chain in self.domains:
            if chain.top_level not in seen:
                seen.append(chain.top_level)
        return tuple(seen)


@dataclass(frozen=True)
class AnnotationMetrics:
    """Summary of an expert review campaign."""

    annotator_count: int
    decided: int
    approved: int
    mean_seconds_per_item: float | None = None
    cost_per_item_usd: float | None = None
    duration_days: float | None = None

    @property
    def preservation_rate(self) -> float | None:
        """Approved share of decided items; None before any decision."""
        if self.decided == 0:
            return None
        return self.approved / self.decided
