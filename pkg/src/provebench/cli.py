"""Command-line entry points for the funnel, the evaluator, and review serving.

The funnel subcommands (`formalize`, `compile-filter`, `vote`, `disprove`,
`run-all`) all drive the same resumable pipeline against one event store and
differ only in how deep they run; re-running any of them reuses every stored
result, so a store can be advanced stage by stage or in one shot.
"""

from __future__ import annotations

import json
import shlex
from pathlib import Path

import click

from . import errors
from .corpus import STAGE_ORDER, Stage, funnel_stats, ingest_problems
from .evalharness import (
    BudgetSpec,
    ensemble_pass,
    domain_breakdown,
    pass_at_k,
    read_attempts,
    report_from_record,
    report_to_record,
    strategy_comparison,
)
from .formatting import format_percent
from .llmgateway import (
    EndpointRole,
    Gateway,
    GatewayMode,
    endpoints_by_role,
    load_endpoints,
)
from .pipeline import (
    DEFAULT_DISPROOF_BUDGET,
    DISPOSITIONS,
    EventStore,
    FunnelConfig,
    load_records,
    run_funnel,
    stage_survivor_counts,
)
from .reviewapi import DEFAULT_LEASE_TTL_SECONDS, ReviewService, create_app
from .verifier import (
    REPL_NATIVE,
    WIRE,
    ScriptedMockBackend,
    SubprocessBackend,
    VerifierConfig,
    open_root_session,
)


def _fail(exc: Exception) -> "click.ClickException":
    return click.ClickException(str(exc))


@click.group()
@click.version_option(package_name="provebench")
def main() -> None:
    """Formalization funnel, prover evaluation, and expert review tools."""


# --------------------------------------------------------------- funnel stages


def _funnel_options(fn):
    options = [
        click.option(
            "--problems",
            "problems_path",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            required=True,
            help="Problem file, one JSON record per line.",
        ),
        click.option(
            "--store",
            "store_path",
            type=click.Path(dir_okay=False, path_type=Path),
            required=True,
            help="Append-only event store (created on first use, reused on resume).",
        ),
        click.option(
            "--endpoints",
            "endpoints_path",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            required=True,
            help="Model endpoint config (JSON; API keys come from env vars).",
        ),
        click.option(
            "--mode",
            type=click.Choice([mode.value for mode in GatewayMode]),
            default=GatewayMode.LIVE.value,
            show_default=True,
            help="Model traffic mode: call out, record cassettes, or replay them.",
        ),
        click.option(
            "--cassette-dir",
            type=click.Path(file_okay=False, path_type=Path),
            default=None,
            help="Cassette directory (required for record/replay modes).",
        ),
        click.option(
            "--backend-command",
            default=None,
            help="Compiler backend to launch (shell words). Omit to use the "
            "scripted in-process mock (dry runs and tests).",
        ),
        click.option(
            "--backend-dialect",
            type=click.Choice([WIRE, REPL_NATIVE]),
            default=WIRE,
            show_default=True,
            help="Wire protocol the backend process speaks.",
        ),
        click.option(
            "--pool-size",
            type=click.IntRange(min=1),
            default=4,
            show_default=True,
            help="Parallel verification tasks sharing the root environment.",
        ),
        click.option(
            "--per-task-timeout",
            type=click.FloatRange(min=0, min_open=True),
            default=60.0,
            show_default=True,
            help="Seconds before a single verification task times out.",
        ),
        click.option(
            "--samples",
            type=click.IntRange(min=1),
            default=1,
            show_default=True,
            help="Statements sampled from each autoformalizer per problem.",
        ),
        click.option(
            "--disproof-budget",
            type=click.IntRange(min=0),
            default=DEFAULT_DISPROOF_BUDGET,
            show_default=True,
            help="Proof attempts against each statement's negation.",
        ),
        click.option(
            "--parallelism",
            type=click.IntRange(min=1),
            default=1,
            show_default=True,
            help="Problems processed concurrently.",
        ),
        click.option(
            "--dry-run",
            is_flag=True,
            help="Describe what would run, then exit without calling anything.",
        ),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _echo_run_summary(records) -> None:
    by_disposition = {disposition: 0 for disposition in DISPOSITIONS}
    for record in records:
        if record.disposition:
            by_disposition[record.disposition] += 1
    click.echo(f"candidates: {len(records)}")
    for disposition, count in by_disposition.items():
        if count:
            click.echo(f"  {disposition}: {count}")
    report = funnel_stats(stage_survivor_counts(records), initial_count=len(records))
    click.echo("stage            count  absolute  retention")
    for stage, count, absolute, retention in report.rows():
        click.echo(f"{stage:<16} {count:>5}  {absolute:>7}%  {retention:>8}%")


def _run_stage(
    stop_after: Stage,
    *,
    problems_path: Path,
    store_path: Path,
    endpoints_path: Path,
    mode: str,
    cassette_dir: Path | None,
    backend_command: str | None,
    backend_dialect: str,
    pool_size: int,
    per_task_timeout: float,
    samples: int,
    disproof_budget: int,
    parallelism: int,
    dry_run: bool,
) -> None:
    try:
        problems = ingest_problems(problems_path)
        endpoints = load_endpoints(endpoints_path)
        provers = endpoints_by_role(endpoints, EndpointRole.PROVER)
        config = FunnelConfig(
            autoformalizers=endpoints_by_role(endpoints, EndpointRole.AUTOFORMALIZER),
            judges=endpoints_by_role(endpoints, EndpointRole.JUDGE),
            disproof_prover=provers[0] if provers else None,
            samples_per_autoformalizer=samples,
            disproof_budget=disproof_budget,
            problem_parallelism=parallelism,
        )
    except errors.ProvebenchError as exc:
        raise _fail(exc) from exc

    stages = STAGE_ORDER[: STAGE_ORDER.index(stop_after) + 1]
    if dry_run:
        click.echo(f"would process {len(problems)} problems into {store_path}")
        click.echo(f"stages: {', '.join(stage.value for stage in stages)}")
        click.echo(
            f"autoformalizers: "
            f"{', '.join(e.model_id for e in config.autoformalizers) or '(none)'}"
        )
        click.echo(f"judges: {', '.join(e.model_id for e in config.judges) or '(none)'}")
        prover = config.disproof_prover
        click.echo(f"disproof prover: {prover.model_id if prover else '(none)'}")
        click.echo(
            f"samples per autoformalizer: {samples}; disproof budget: "
            f"{disproof_budget}; problem parallelism: {parallelism}"
        )
        click.echo("dry run: no model, compiler, or store was touched")
        return

    # Stages before compile checking never talk to the compiler, so don't
    # pay for a real backend (and its root initialization) to run them.
    needs_backend = STAGE_ORDER.index(stop_after) >= STAGE_ORDER.index(
        Stage.COMPILE_CHECKED
    )
    try:
        store = EventStore(store_path)
        gateway = Gateway(
            GatewayMode(mode),
            cassette_dir=str(cassette_dir) if cassette_dir else None,
        )
        if backend_command and needs_backend:
            backend = SubprocessBackend(
                shlex.split(backend_command), dialect=backend_dialect
            )
        else:
            backend = ScriptedMockBackend()
        verifier_config = VerifierConfig(
            pool_size=pool_size, per_task_timeout=per_task_timeout
        )
        with backend:
            with open_root_session(backend, verifier_config) as session:
                records = run_funnel(
                    problems, store, gateway, session, config, stop_after=stop_after
                )
    except errors.ProvebenchError as exc:
        raise _fail(exc) from exc
    _echo_run_summary(records)


def _stage_command(name: str, stop_after: Stage, help_text: str):
    @main.command(name=name, help=help_text)
    @_funnel_options
    def command(**kwargs):
        _run_stage(stop_after, **kwargs)

    return command


_stage_command(
    "formalize",
    Stage.AUTOFORMALIZED,
    "Sample formal statements for every problem and record them.",
)
_stage_command(
    "compile-filter",
    Stage.COMPILE_CHECKED,
    "Run the funnel through compiler checking of every candidate.",
)
_stage_command(
    "vote",
    Stage.SEMANTIC_VERIFIED,
    "Run the funnel through the semantic judge vote.",
)
_stage_command(
    "disprove",
    Stage.DISPROOF_SURVIVED,
    "Run the funnel through the negation-disproof filter.",
)
_stage_command(
    "run-all",
    Stage.DISPROOF_SURVIVED,
    "Run every automated stage; survivors queue up for expert review.",
)


@main.command(name="funnel-report")
@click.option(
    "--store",
    "store_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Event store produced by the funnel commands.",
)
@click.option(
    "--initial",
    type=click.IntRange(min=0),
    default=None,
    help="Initial pool size for absolute rates (default: candidate count).",
)
@click.option("--as-json", is_flag=True, help="Emit the report as a JSON record.")
def funnel_report(store_path: Path, initial: int | None, as_json: bool) -> None:
    """Summarize survival per stage for an existing event store."""
    try:
        records = load_records(EventStore(store_path).events())
        initial_count = len(records) if initial is None else initial
        report = funnel_stats(stage_survivor_counts(records), initial_count)
    except errors.ProvebenchError as exc:
        raise _fail(exc) from exc
    if as_json:
        record = {
            "initial_count": report.initial_count,
            "stages": [
                {
                    "stage": stage,
                    "count": count,
                    "absolute_percent": absolute,
                    "relative_percent": retention,
                }
                for stage, count, absolute, retention in report.rows()
            ],
        }
        click.echo(json.dumps(record, ensure_ascii=False, sort_keys=True))
        return
    click.echo(f"initial pool: {report.initial_count}")
    click.echo("stage            count  absolute  retention")
    for stage, count, absolute, retention in report.rows():
        click.echo(f"{stage:<16} {count:>5}  {absolute:>7}%  {retention:>8}%")


# ------------------------------------------------------------------ evaluation


@main.command(name="eval")
@click.option(
    "--attempts",
    "attempts_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Proof attempt file, one JSON record per line.",
)
@click.option(
    "--problems",
    "problems_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Problem file defining the evaluation set.",
)
@click.option("--budget", "budget_text", default=None, help='Search budget, "K" or "N×S×T".')
@click.option("--k", "k_value", type=click.IntRange(min=1), default=None, help="Shorthand for --budget K.")
@click.option("--by-domain", is_flag=True, help="Break the pass rate down by top-level domain.")
@click.option("--by-strategy", is_flag=True, help="Report each prompting strategy separately.")
@click.option(
    "--ensemble",
    "ensemble_paths",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    multiple=True,
    help="Combine previously saved report records (repeatable).",
)
@click.option(
    "--out",
    "out_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Also write the report as a structured JSON record.",
)
def eval_command(
    attempts_path: Path | None,
    problems_path: Path | None,
    budget_text: str | None,
    k_value: int | None,
    by_domain: bool,
    by_strategy: bool,
    ensemble_paths: tuple[Path, ...],
    out_path: Path | None,
) -> None:
    """Score recorded proof attempts: Pass@K, breakdowns, ensembles."""
    if ensemble_paths:
        if attempts_path or budget_text or k_value or by_strategy:
            raise click.UsageError(
                "--ensemble combines saved reports; it takes no attempts or budget"
            )
        try:
            reports = []
            for path in ensemble_paths:
                with open(path, encoding="utf-8") as handle:
                    reports.append(report_from_record(json.load(handle)))
            report = ensemble_pass(reports)
        except (errors.ProvebenchError, json.JSONDecodeError) as exc:
            raise _fail(exc) from exc
    else:
        if attempts_path is None or problems_path is None:
            raise click.UsageError("--attempts and --problems are required")
        if (budget_text is None) == (k_value is None):
            raise click.UsageError("pass exactly one of --budget or --k")
        try:
            budget = (
                BudgetSpec.parse(budget_text)
                if budget_text is not None
                else BudgetSpec.single_pass(k_value)
            )
            attempts = read_attempts(attempts_path)
            problems = ingest_problems(problems_path)
            if by_strategy:
                curves = strategy_comparison(attempts, problems, [budget.effective_k])
                click.echo(f"budget {budget.label} by strategy:")
                for strategy, curve in curves.items():
                    (_k, rate), = curve
                    click.echo(f"  {strategy.value}: {format_percent(rate * 100)}%")
                if out_path is not None:
                    record = {
                        "budget": budget.label,
                        "per_strategy": {
                            strategy.value: curve[0][1]
                            for strategy, curve in curves.items()
                        },
                    }
                    out_path.write_text(
                        json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n",
                        encoding="utf-8",
                    )
                return
            report = pass_at_k(attempts, problems, budget)
            if by_domain:
                report = report.with_domains(domain_breakdown(report, problems))
        except errors.ProvebenchError as exc:
            raise _fail(exc) from exc

    click.echo(report.render())
    if out_path is not None:
        out_path.write_text(
            json.dumps(report_to_record(report), ensure_ascii=False, sort_keys=True)
            + "\n",
            encoding="utf-8",
        )


# ---------------------------------------------------------------- review serve


@main.command(name="review-serve")
@click.option(
    "--store",
    "store_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Event store holding the candidates awaiting review.",
)
@click.option("--port", type=click.IntRange(min=1, max=65535), default=8410, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--reviewers",
    required=True,
    help="Comma-separated reviewer ids allowed to pull items.",
)
@click.option(
    "--lease-ttl",
    type=click.FloatRange(min=0, min_open=True),
    default=DEFAULT_LEASE_TTL_SECONDS,
    show_default=True,
    help="Seconds an item stays assigned to a reviewer before re-offering.",
)
@click.option(
    "--second-opinion",
    is_flag=True,
    help="Allow one additional decision per item from a different reviewer.",
)
@click.option(
    "--static-dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    default=None,
    help="Directory of web client assets to serve at the root path.",
)
def review_serve(
    store_path: Path,
    port: int,
    host: str,
    reviewers: str,
    lease_ttl: float,
    second_opinion: bool,
    static_dir: Path | None,
) -> None:
    """Serve the expert review queue over HTTP."""
    import uvicorn

    roster = [name.strip() for name in reviewers.split(",") if name.strip()]
    try:
        service = ReviewService(
            EventStore(store_path),
            roster,
            lease_ttl=lease_ttl,
            second_opinion=second_opinion,
        )
        app = create_app(service, static_dir=str(static_dir) if static_dir else None)
    except errors.ProvebenchError as exc:
        raise _fail(exc) from exc
    pending = service.stats()["pending"]
    click.echo(f"serving {pending} pending items on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
