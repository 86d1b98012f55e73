"""Problem corpus: record types, classification tree, funnel accounting,
ingest, and stratified subsampling."""

from .funnel import FunnelConsistencyError, FunnelReport, funnel_stats
from .ingest import (
    PROBLEMS_SCHEMA,
    DuplicateProblemError,
    IngestError,
    SchemaError,
    ingest_problems,
    problem_to_record,
    write_problems,
)
from .models import (
    CHAIN_ARROW,
    MAX_CHAINS_PER_PROBLEM,
    STAGE_ORDER,
    AnnotationMetrics,
    Difficulty,
    DomainChain,
    Problem,
    ProblemValidationError,
    Stage,
)
from .report import (
    DOMAINS_HEADING,
    REPORT_SENTINEL,
    SUMMARY_HEADING,
    ChainCardinalityError,
    IncompleteReportError,
    parse_domain_report,
    render_chains,
)
from .sampling import (
    UNCLASSIFIED,
    MissingLabelError,
    SamplingError,
    StratumExhaustedError,
    largest_remainder_allocation,
    stratified_sample,
)
from .taxonomy import OTHER, ROOT, InvalidChainError, TaxonomyNodeError, top_level_domains

__all__ = [
    "AnnotationMetrics",
    "CHAIN_ARROW",
    "ChainCardinalityError",
    "Difficulty",
    "DomainChain",
    "DOMAINS_HEADING",
    "DuplicateProblemError",
    "FunnelConsistencyError",
    "FunnelReport",
    "IncompleteReportError",
    "IngestError",
    "InvalidChainError",
    "MAX_CHAINS_PER_PROBLEM",
    "MissingLabelError",
    "OTHER",
    "PROBLEMS_SCHEMA",
    "Problem",
    "ProblemValidationError",
    "REPORT_SENTINEL",
    "ROOT",
    "STAGE_ORDER",
    "SamplingError",
    "SchemaError",
    "Stage",
    "StratumExhaustedError",
    "SUMMARY_HEADING",
    "TaxonomyNodeError",
    "UNCLASSIFIED",
    "funnel_stats",
    "ingest_problems",
    "largest_remainder_allocation",
    "parse_domain_report",
    "problem_to_record",
    "render_chains",
    "stratified_sample",
    "top_level_domains",
    "write_problems",
]
