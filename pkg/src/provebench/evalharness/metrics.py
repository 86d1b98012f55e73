"""Pass@K reports, scaling curves, ensembles, and breakdowns.

Pass@K asks: for what fraction of problems does a verified proof appear
among the first K recorded attempts?  Everything here is pure aggregation
over already-verified attempts; no model or prover is consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .. import errors
from ..corpus import Problem
from ..formatting import format_percent
from ..llmgateway import ProverStrategy
from .attempts import ProofAttempt
from .budget import BudgetSpec


class EvalError(errors.ProvebenchError):
    """An evaluation request is inconsistent with its inputs."""


class ReportCompatibilityError(EvalError):
    """Reports being combined do not cover the same problems."""


class MissingDomainError(EvalError):
    """A problem in a domain breakdown carries no domain chains."""


@dataclass(frozen=True)
class EvalReport:
    """Per-problem solved flags under one budget, plus derived rates."""

    budget_label: str
    per_problem: dict[str, bool]
    budget: BudgetSpec | None = None
    per_domain: dict[str, float] | None = None

    @property
    def problem_ids(self) -> frozenset[str]:
        return frozenset(self.per_problem)

    @property
    def solved(self) -> frozenset[str]:
        return frozenset(pid for pid, ok in self.per_problem.items() if ok)

    @property
    def solved_count(self) -> int:
        return sum(1 for ok in self.per_problem.values() if ok)

    @property
    def total(self) -> int:
        return len(self.per_problem)

    @property
    def pass_rate(self) -> float:
        return self.solved_count / self.total

    def with_domains(self, per_domain: dict[str, float]) -> "EvalReport":
        return replace(self, per_domain=dict(per_domain))

    def render(self) -> str:
        lines = [
            f"budget {self.budget_label}: {self.solved_count}/{self.total} "
            f"solved ({format_percent(self.pass_rate * 100)}%)"
        ]
        if self.per_domain:
            for domain, rate in self.per_domain.items():
                lines.append(f"  {domain}: {format_percent(rate * 100)}%")
        return "\n".join(lines)


REPORT_SCHEMA = "eval-report/v1"


def report_to_record(report: EvalReport) -> dict:
    """Serialize a report so another run can consume it (e.g. ensembles)."""
    return {
        "schema": REPORT_SCHEMA,
        "budget_label": report.budget_label,
        "budget": report.budget.label if report.budget is not None else None,
        "per_problem": dict(sorted(report.per_problem.items())),
        "per_domain": dict(report.per_domain) if report.per_domain else None,
    }


def report_from_record(record: dict) -> EvalReport:
    if not isinstance(record, dict) or record.get("schema") != REPORT_SCHEMA:
        raise EvalError(f"not an evaluation report record (schema {REPORT_SCHEMA})")
    per_problem = record.get("per_problem")
    if not isinstance(per_problem, dict) or not all(
        isinstance(pid, str) and isinstance(ok, bool)
        for pid, ok in per_problem.items()
    ):
        raise EvalError("per_problem must map problem ids to booleans")
    budget_text = record.get("budget")
    budget = BudgetSpec.parse(budget_text) if budget_text is not None else None
    per_domain = record.get("per_domain")
    return EvalReport(
        budget_label=str(record["budget_label"]),
        per_problem=dict(per_problem),
        budget=budget,
        per_domain=dict(per_domain) if per_domain else None,
    )


def _earliest_verified(attempts: list[ProofAttempt]) -> dict[str, int]:
    """Per problem, the smallest verified attempt index; absent if never solved.

    Also validates attempt uniqueness, since this is the single pass every
    aggregation makes over the raw attempts.
    """
    seen: set[tuple] = set()
    seen_add = seen.add
    before = 0
    earliest: dict[str, int] = {}
    for attempt in attempts:
        pid = attempt.problem_id
        index = attempt.attempt_index
        seen_add((pid, attempt.prover_id, attempt.strategy, index))
        after = len(seen)
        if after == before:
            raise EvalError(
                f"duplicate attempt index {index} for problem "
                f"{pid!r}, prover {attempt.prover_id!r}"
            )
        before = after
        if attempt.verified and index < earliest.get(pid, index + 1):
            earliest[pid] = index
    return earliest


def _evaluation_ids(
    attempts: list[ProofAttempt], problems: list[Problem]
) -> list[str]:
    if not problems:
        raise EvalError("cannot evaluate an empty problem list")
    ids = [problem.id for problem in problems]
    if len(set(ids)) != len(ids):
        raise EvalError("problem ids must be unique")
    unknown = sorted({a.problem_id for a in attempts} - set(ids))
    if unknown:
        raise EvalError(
            f"attempts reference problems outside the evaluation set: "
            f"{', '.join(unknown)}"
        )
    return ids


def pass_at_k(
    attempts: list[ProofAttempt], problems: list[Problem], budget: BudgetSpec
) -> EvalReport:
    """Fraction of problems with a verified attempt among the first K.

    Attempt order is the recorded generation order (``attempt_index``);
    problems with no attempts count as unsolved.
    """
    ids = _evaluation_ids(attempts, problems)
    earliest = _earliest_verified(attempts)
    k = budget.effective_k
    per_problem = {pid: pid in earliest and earliest[pid] < k for pid in ids}
    return EvalReport(budget_label=budget.label, per_problem=per_problem, budget=budget)


def scaling_curve(
    attempts: list[ProofAttempt], problems: list[Problem], ks: list[int]
) -> list[tuple[int, float]]:
    """Pass rate at each K; monotone nondecreasing by construction."""
    if not ks:
        raise EvalError("a scaling curve needs at least one K")
    if any(isinstance(k, bool) or not isinstance(k, int) or k < 1 for k in ks):
        raise EvalError("every K must be an integer >= 1")
    if list(ks) != sorted(set(ks)):
        raise EvalError("ks must be strictly ascending")
    ids = _evaluation_ids(attempts, problems)
    earliest = _earliest_verified(attempts)
    solved_indices = sorted(earliest[pid] for pid in earliest)
    total = len(ids)
    return [
        (k, sum(1 for index in solved_indices if index < k) / total) for k in ks
    ]


def ensemble_pass(reports: list[EvalReport]) -> EvalReport:
    """Union of member solved sets over a shared problem set.

    The ensemble solves a problem when any member does, so its rate is at
    least the best member's and at most the sum of member rates.
    """
    if not reports:
        raise EvalError("an ensemble needs at least one report")
    if len(reports) == 1:
        return reports[0]
    base = reports[0].problem_ids
    for report in reports[1:]:
        if report.problem_ids != base:
            raise ReportCompatibilityError(
                "ensemble members evaluate different problem sets"
            )
    per_problem = {
        pid: any(report.per_problem[pid] for report in reports)
        for pid in reports[0].per_problem
    }
    effective = {
        report.budget.effective_k for report in reports if report.budget is not None
    }
    if len(effective) == 1 and all(report.budget is not None for report in reports):
        label = f"{len(reports)}×{effective.pop()}"
    else:
        label = "+".join(report.budget_label for report in reports)
    return EvalReport(budget_label=label, per_problem=per_problem, budget=None)


def domain_breakdown(
    report: EvalReport, problems: list[Problem]
) -> dict[str, float]:
    """Pass rate per top-level domain.

    A problem carrying chains into several domains contributes once to each
    of those domains' denominators (and numerators when solved).
    """
    by_id = {problem.id: problem for problem in problems}
    missing = sorted(report.problem_ids - set(by_id))
    if missing:
        raise EvalError(
            f"report covers problems absent from the corpus slice: "
            f"{', '.join(missing)}"
        )
    totals: dict[str, int] = {}
    solved: dict[str, int] = {}
    for pid, ok in report.per_problem.items():
        problem = by_id[pid]
        if not problem.domains:
            raise MissingDomainError(f"problem {pid!r} carries no domain chains")
        for domain in problem.top_level_domains:
            totals[domain] = totals.get(domain, 0) + 1
            solved[domain] = solved.get(domain, 0) + (1 if ok else 0)
    return {domain: solved[domain] / totals[domain] for domain in totals}


def strategy_comparison(
    attempts: list[ProofAttempt], problems: list[Problem], ks: list[int]
) -> dict[ProverStrategy, list[tuple[int, float]]]:
    """One scaling curve per generation strategy present in the attempts."""
    curves: dict[ProverStrategy, list[tuple[int, float]]] = {}
    for strategy in ProverStrategy:
        subset = [attempt for attempt in attempts if attempt.strategy is strategy]
        if subset:
            curves[strategy] = scaling_curve(subset, problems, ks)
    return curves
