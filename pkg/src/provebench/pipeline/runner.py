"""Funnel orchestration: generate candidates, filter them, persist everything.

Every run walks problems in input order and writes events in one canonical
order, consulting the store first at each step.  A resumed run therefore
appends exactly the events an uninterrupted run would have written after
the interruption point, which keeps stores byte-identical.  A run over a
completed store is a no-op: no gateway or backend traffic at all.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..corpus import Problem, Stage
from ..leanparse import (
    PARSE_FAILED,
    PARSE_OK,
    DegenerateGoalError,
    FormalStatement,
    negate_statement,
    parse_statement,
    token_stream,
)
from ..llmgateway import (
    ConfigError,
    Gateway,
    MissingCassetteError,
    ModelEndpoint,
    ProverStrategy,
    ProviderRequestError,
    TransportError,
    autoformalize,
    build_prover_prompt,
    extract_code_block,
    proof_stub,
    semantic_vote,
)
from ..verifier import (
    RootSession,
    TaskMode,
    Verdict,
    VerificationTask,
    statement_compiles,
    verify_one,
)
from .records import (
    DISPROVED,
    DUPLICATE,
    ERRORED,
    FAILED_COMPILE,
    FAILED_SEMANTIC,
    READY_FOR_REVIEW,
    DisproofOutcome,
    DisproofResult,
    PipelineRecord,
    load_records,
)
from .store import EventStore

DEFAULT_DISPROOF_BUDGET = 32

# Per-candidate infrastructure failures: the candidate is marked errored
# and the run moves on. Config problems still fail the whole run.
_CANDIDATE_ERRORS = (TransportError, ProviderRequestError, MissingCassetteError)


@dataclass
class FunnelConfig:
    autoformalizers: list[ModelEndpoint]
    judges: list[ModelEndpoint]
    disproof_prover: ModelEndpoint | None = None
    samples_per_autoformalizer: int = 1
    disproof_budget: int = DEFAULT_DISPROOF_BUDGET
    problem_parallelism: int = 1

    def __post_init__(self):
        if not self.autoformalizers:
            raise ConfigError("funnel needs at least one autoformalizer endpoint")
        if not self.judges:
            raise ConfigError("funnel needs at least one judge endpoint")
        if self.samples_per_autoformalizer < 1:
            raise ConfigError("samples_per_autoformalizer must be at least 1")
        if self.disproof_budget < 0:
            raise ConfigError("disproof_budget must be nonnegative")
        if self.problem_parallelism < 1:
            raise ConfigError("problem_parallelism must be at least 1")


def disproof_filter(
    gateway: Gateway,
    statement: FormalStatement,
    prover: ModelEndpoint | None,
    session: RootSession,
    budget: int,
) -> DisproofResult:
    """Try to prove the statement's negation; success discards the original.

    Samples up to ``budget`` proof attempts and verifies them in order,
    stopping at the first verified one.
    """
    if budget < 0:
        raise ConfigError("disproof budget must be nonnegative")
    try:
        negated = negate_statement(statement)
    except DegenerateGoalError:
        return DisproofResult(DisproofOutcome.NEGATION_ILL_FORMED, attempts=0)
    name = negated.statement.theorem_name
    rule = negated.rule.value
    if budget == 0:
        return DisproofResult(DisproofOutcome.NEGATION_UNPROVED, 0, name, rule)
    if prover is None:
        raise ConfigError("disproof with a nonzero budget needs a prover endpoint")
    source = negated.statement.render()
    stub = proof_stub(source)
    prompt = build_prover_prompt(source, ProverStrategy.VANILLA)
    completions = gateway.complete(prover, prompt, n=budget)
    for index, completion in enumerate(completions):
        body = completion if completion[:1].isspace() else f"\n  {completion}"
        task = VerificationTask(
            task_id=f"{name}:disproof:{index}",
            code=stub + body,
            mode=TaskMode.PROOF_CHECK,
        )
        outcome = verify_one(session, task)
        if outcome.verdict is Verdict.PROVED:
            return DisproofResult(DisproofOutcome.NEGATION_PROVED, index + 1, name, rule)
    return DisproofResult(
        DisproofOutcome.NEGATION_UNPROVED, len(completions), name, rule
    )


class _StoreIndex:
    """Lookup of already-persisted events, built once per run."""

    def __init__(self, events: list[dict]):
        self.formalized: dict[str, dict] = {}
        self.stages: dict[tuple[str, int, int, str], dict] = {}
        self.dispositions: dict[tuple[str, int, int], dict] = {}
        for event in events:
            kind = event.get("kind")
            if kind == "formalized":
                self.formalized[event["problem_id"]] = event
            elif kind == "stage":
                key = (event["problem_id"], event["k"], event["n"], event["stage"])
                self.stages[key] = event
            elif kind == "disposition":
                key = (event["problem_id"], event["k"], event["n"])
                self.dispositions[key] = event


@dataclass
class _Candidate:
    k: int
    n: int
    raw_text: str
    parse_status: str
    source_text: str
    parse_error: str | None
    statement: FormalStatement | None

    def entry(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "raw_text": self.raw_text,
            "parse_status": self.parse_status,
            "source_text": self.source_text,
            "parse_error": self.parse_error,
        }


def _backend_failed(payload: dict) -> bool:
    return any(
        str(message.get("data", "")).startswith("backend failure:")
        for message in payload.get("messages", ())
    )


def _problem_events(
    problem: Problem,
    index: _StoreIndex,
    gateway: Gateway,
    session: RootSession,
    config: FunnelConfig,
    stop_after: Stage,
) -> list[tuple[str, dict]]:
    pending: list[tuple[str, dict]] = []

    def emit_stage(cand: _Candidate, stage: Stage, passed: bool, payload: dict):
        pending.append(
            (
                "stage",
                {
                    "problem_id": problem.id,
                    "k": cand.k,
                    "n": cand.n,
                    "stage": stage.value,
                    "passed": passed,
                    "payload": payload,
                },
            )
        )

    def emit_disposition(cand: _Candidate, disposition: str, detail: dict | None = None):
        if (problem.id, cand.k, cand.n) in index.dispositions:
            return
        fields = {
            "problem_id": problem.id,
            "k": cand.k,
            "n": cand.n,
            "disposition": disposition,
        }
        if detail is not None:
            fields["detail"] = detail
        pending.append(("disposition", fields))

    # -- stage 1: autoformalize -------------------------------------------
    stored = index.formalized.get(problem.id)
    if stored is None:
        try:
            generated = autoformalize(
                gateway, problem, config.autoformalizers,
                config.samples_per_autoformalizer,
            )
        except _CANDIDATE_ERRORS as exc:
            pending.append(
                (
                    "formalized",
                    {
                        "problem_id": problem.id,
                        "nl_statement": problem.nl_statement,
                        "reference_answer": problem.reference_answer,
                        "candidates": [],
                        "error": str(exc),
                    },
                )
            )
            return pending
        candidates = [
            _Candidate(
                k=raw.k,
                n=raw.n,
                raw_text=raw.raw_text,
                parse_status=PARSE_OK if raw.parsed else PARSE_FAILED,
                source_text=raw.statement.render()
                if raw.parsed
                else extract_code_block(raw.raw_text),
                parse_error=raw.parse_error,
                statement=raw.statement,
            )
            for raw in generated
        ]
        pending.append(
            (
                "formalized",
                {
                    "problem_id": problem.id,
                    "nl_statement": problem.nl_statement,
                    "reference_answer": problem.reference_answer,
                    "candidates": [cand.entry() for cand in candidates],
                },
            )
        )
    else:
        candidates = [
            _Candidate(
                k=entry["k"],
                n=entry["n"],
                raw_text=entry["raw_text"],
                parse_status=entry["parse_status"],
                source_text=entry["source_text"],
                parse_error=entry.get("parse_error"),
                statement=parse_statement(
                    entry["source_text"],
                    problem_id=problem.id,
                    k=entry["k"],
                    n=entry["n"],
                )
                if entry["parse_status"] == PARSE_OK
                else None,
            )
            for entry in stored["candidates"]
        ]
    if stop_after is Stage.AUTOFORMALIZED:
        return pending

    # -- stage 2: compile filter ------------------------------------------
    compile_passers: list[_Candidate] = []
    for cand in candidates:
        event = index.stages.get(
            (problem.id, cand.k, cand.n, Stage.COMPILE_CHECKED.value)
        )
        if event is not None:
            passed, payload = event["passed"], event["payload"]
        else:
            if cand.parse_status == PARSE_FAILED:
                # unparseable source cannot be submitted; fails without a call
                passed = False
                payload = {
                    "verdict": Verdict.COMPILE_ERROR.value,
                    "reason": f"parse error: {cand.parse_error}",
                }
            else:
                outcome = statement_compiles(cand.statement, session)
                passed = outcome.verdict is Verdict.STATEMENT_OK
                payload = outcome.to_record()
            emit_stage(cand, Stage.COMPILE_CHECKED, passed, payload)
        if passed:
            compile_passers.append(cand)
        else:
            emit_disposition(
                cand, ERRORED if _backend_failed(payload) else FAILED_COMPILE
            )

    # token-identical statements for the same problem are redundant work
    # downstream; the first (k, n) carries on for all of them
    survivors: list[_Candidate] = []
    first_by_tokens: dict[tuple[str, ...], _Candidate] = {}
    for cand in compile_passers:
        tokens = tuple(token_stream(cand.source_text))
        winner = first_by_tokens.get(tokens)
        if winner is None:
            first_by_tokens[tokens] = cand
            survivors.append(cand)
        else:
            emit_disposition(
                cand, DUPLICATE, detail={"duplicate_of": [winner.k, winner.n]}
            )
    if stop_after is Stage.COMPILE_CHECKED:
        return pending

    # -- stage 3: unanimous semantic vote ----------------------------------
    vote_passers: list[_Candidate] = []
    for cand in survivors:
        event = index.stages.get(
            (problem.id, cand.k, cand.n, Stage.SEMANTIC_VERIFIED.value)
        )
        if event is not None:
            passed, payload = event["passed"], event["payload"]
        else:
            try:
                outcome = semantic_vote(gateway, problem, cand.statement, config.judges)
            except _CANDIDATE_ERRORS as exc:
                payload = {"error": str(exc)}
                emit_stage(cand, Stage.SEMANTIC_VERIFIED, False, payload)
                emit_disposition(cand, ERRORED)
                continue
            passed = outcome.accepted
            payload = {
                "accepted": outcome.accepted,
                "votes": [
                    {
                        "model_id": vote.model_id,
                        "raw_text": vote.raw_text,
                        "verdict": vote.verdict.value,
                    }
                    for vote in outcome.votes
                ],
            }
            emit_stage(cand, Stage.SEMANTIC_VERIFIED, passed, payload)
        if passed:
            vote_passers.append(cand)
        else:
            emit_disposition(
                cand, ERRORED if "error" in payload else FAILED_SEMANTIC
            )
    if stop_after is Stage.SEMANTIC_VERIFIED:
        return pending

    # -- stage 4: negation-based disproof ----------------------------------
    for cand in vote_passers:
        event = index.stages.get(
            (problem.id, cand.k, cand.n, Stage.DISPROOF_SURVIVED.value)
        )
        if event is not None:
            passed, payload = event["passed"], event["payload"]
        else:
            try:
                result = disproof_filter(
                    gateway,
                    cand.statement,
                    config.disproof_prover,
                    session,
                    config.disproof_budget,
                )
            except _CANDIDATE_ERRORS as exc:
                payload = {"error": str(exc)}
                emit_stage(cand, Stage.DISPROOF_SURVIVED, False, payload)
                emit_disposition(cand, ERRORED)
                continue
            passed = result.original_survives
            payload = result.to_payload()
            emit_stage(cand, Stage.DISPROOF_SURVIVED, passed, payload)
        if passed:
            emit_disposition(cand, READY_FOR_REVIEW)
        else:
            emit_disposition(cand, ERRORED if "error" in payload else DISPROVED)
    return pending


def run_funnel(
    problems: list[Problem],
    store: EventStore,
    gateway: Gateway,
    session: RootSession,
    config: FunnelConfig,
    stop_after: Stage = Stage.DISPROOF_SURVIVED,
) -> list[PipelineRecord]:
    """Run the funnel up to ``stop_after`` and return the folded records.

    Already-persisted work is skipped, so re-running over a completed store
    makes no model or verifier calls and appends nothing.
    """
    if stop_after is Stage.EXPERT_APPROVED:
        raise ConfigError("the expert stage is driven by the review service")
    if (
        stop_after is Stage.DISPROOF_SURVIVED
        and config.disproof_budget > 0
        and config.disproof_prover is None
    ):
        raise ConfigError("disproof stage needs a prover endpoint (or budget 0)")
    index = _StoreIndex(store.events())

    def process(problem: Problem) -> list[tuple[str, dict]]:
        return _problem_events(problem, index, gateway, session, config, stop_after)

    if config.problem_parallelism == 1:
        batches = map(process, problems)
        for batch in batches:
            for kind, fields in batch:
                store.append(kind, **fields)
    else:
        # compute in parallel, commit strictly in problem order
        with ThreadPoolExecutor(max_workers=config.problem_parallelism) as pool:
            for batch in pool.map(process, problems):
                for kind, fields in batch:
                    store.append(kind, **fields)
    return load_records(store.events())
