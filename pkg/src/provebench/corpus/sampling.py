"""Deterministic stratified subsampling of a labeled corpus.

Strata are top-level domains (of each problem's first chain).  Seats per
stratum come from largest-remainder rounding of the proportional share,
which keeps every stratum within one item of exact proportionality.  Inside
a stratum the quota is split as evenly as supply allows between problems
labeled solvable and unsolvable.  Optional difficulty quotas partition the
population first, with the same machinery applied per difficulty.

Selection within a stratum uses one seeded generator, with strata visited
in sorted order, so a given (population, labels, seed) always yields the
same sample and a new seed permutes selections without moving quotas.
"""

from __future__ import annotations

import random
from typing import Mapping, Sequence

from .. import errors
from .models import Difficulty, Problem

UNCLASSIFIED = "(unclassified)"


class SamplingError(errors.ProvebenchError):
    """Sampling request that no subset of the population can satisfy."""


class MissingLabelError(SamplingError):
    def __init__(self, problem_id: str):
        self.problem_id = problem_id
        super().__init__(f"problem {problem_id!r} has no solvability label")


class StratumExhaustedError(SamplingError):
    def __init__(self, stratum: str, demand: int, supply: int):
        self.stratum = stratum
        super().__init__(
            f"stratum {stratum!r} needs {demand} items but only has {supply}"
        )


def _stratum_key(problem: Problem) -> str:
    if not problem.domains:
        return UNCLASSIFIED
    return problem.domains[0].top_level


def largest_remainder_allocation(sizes: Mapping[str, int], total: int) -> dict[str, int]:
    """Apportion ``total`` seats proportionally to ``sizes``.

    Each stratum gets the floor of its exact share; leftover seats go to the
    largest fractional remainders, ties broken by ascending stratum label.
    """
    population = sum(sizes.values())
    if total > population:
        raise SamplingError(f"target {total} exceeds population {population}")
    if population == 0:
        return {}
    quotas: dict[str, int] = {}
    remainders: list[tuple[float, str]] = []
    for label in sorted(sizes):
        exact = total * sizes[label] / population
        quotas[label] = int(exact)
        remainders.append((exact - int(exact), label))
    leftover = total - sum(quotas.values())
    remainders.sort(key=lambda item: (-item[0], item[1]))
    for _, label in remainders[:leftover]:
        quotas[label] += 1
    return quotas


def _split_evenly(quota: int, solvable: int, unsolvable: int, stratum: str) -> tuple[int, int]:
    """Seats for (solvable, unsolvable) inside one stratum."""
    if quota > solvable + unsolvable:
        raise StratumExhaustedError(stratum, quota, solvable + unsolvable)
    take_solvable = quota // 2
    if quota % 2 and solvable >= unsolvable:
        take_solvable += 1
    take_unsolvable = quota - take_solvable
    if take_solvable > solvable:
        take_unsolvable += take_solvable - solvable
        take_solvable = solvable
    if take_unsolvable > unsolvable:
        take_solvable += take_unsolvable - unsolvable
        take_unsolvable = unsolvable
    return take_solvable, take_unsolvable


def _sample_pool(
    pool: Sequence[Problem],
    labels: Mapping[str, bool],
    target: int,
    rng: random.Random,
    selected: set[str],
) -> None:
    strata: dict[str, list[Problem]] = {}
    for problem in pool:
        strata.setdefault(_stratum_key(problem), []).append(problem)
    quotas = largest_remainder_allocation(
        {label: len(members) for label, members in strata.items()}, target
    )
    for label in sorted(strata):
        members = strata[label]
        solvable = [p for p in members if labels[p.id]]
        unsolvable = [p for p in members if not labels[p.id]]
        take_s, take_u = _split_evenly(quotas[label], len(solvable), len(unsolvable), label)
        for problem in rng.sample(solvable, take_s):
            selected.add(problem.id)
        for problem in rng.sample(unsolvable, take_u):
            selected.add(problem.id)


def stratified_sample(
    problems: Sequence[Problem],
    solved_labels: Mapping[str, bool],
    target_total: int,
    seed: int,
    difficulty_quotas: Mapping[Difficulty, int] | None = None,
) -> list[Problem]:
    """Draw a stratified subset of ``target_total`` problems.

    ``solved_labels`` must label every problem.  When ``difficulty_quotas``
    is given it must sum to ``target_total`` and each difficulty gets
    exactly its quota.  The result preserves population order.
    """
    if target_total < 0:
        raise SamplingError("target_total must be nonnegative")
    if target_total > len(problems):
        raise SamplingError(
            f"target {target_total} exceeds population {len(problems)}"
        )
    for problem in problems:
        if problem.id not in solved_labels:
            raise MissingLabelError(problem.id)

    rng = random.Random(seed)
    selected: set[str] = set()
    if difficulty_quotas is None:
        _sample_pool(problems, solved_labels, target_total, rng, selected)
    else:
        if sum(difficulty_quotas.values()) != target_total:
            raise SamplingError(
                f"difficulty quotas sum to {sum(difficulty_quotas.values())}, "
                f"target is {target_total}"
            )
        pools: dict[Difficulty, list[Problem]] = {}
        for problem in problems:
            pools.setdefault(problem.difficulty, []).append(problem)
        for difficulty in sorted(difficulty_quotas, key=lambda d: d.value):
            quota = difficulty_quotas[difficulty]
            pool = pools.get(difficulty, [])
            if quota > len(pool):
                raise StratumExhaustedError(difficulty.value, quota, len(pool))
            _sample_pool(pool, solved_labels, quota, rng, selected)
    return [problem for problem in problems if problem.id in selected]
