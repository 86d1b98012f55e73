"""Model access layer: endpoints, transports, record/replay, and prompts."""

from .autoformalize import (
    AutoformalizationCandidate,
    autoformalize,
    extract_code_block,
)
from .cassette import CassetteKey, CassetteStore, MissingCassetteError, prompt_hash
from .config import (
    ConfigError,
    EndpointRole,
    ModelEndpoint,
    endpoints_by_role,
    load_endpoints,
)
from .diagnosis import (
    CLASSIFICATION_TAXONOMY,
    FEATURE_BATCH_SIZE,
    DiagnosisFormatError,
    ErrorDiagnosis,
    FeatureBatchSizeError,
    UnknownCategoryError,
    diagnose_features,
    parse_error_classification,
    parse_feature_list,
    two_stage_diagnosis,
)
from .gateway import Gateway, GatewayMode, RetriesExhaustedError
from .prompts import (
    ProverStrategy,
    build_autoformalize_prompt,
    build_domain_classification_prompt,
    build_error_classification_prompt,
    build_error_feature_prompt,
    build_prover_prompt,
    build_semantic_judge_prompt,
    proof_stub,
    suggest_theorem_name,
)
from .transport import (
    CommandTransport,
    FunctionTransport,
    HttpTransport,
    ProviderRequestError,
    Transport,
    TransportError,
    transport_for,
)
from .voting import (
    DEFAULT_JUDGE_COUNT,
    JudgeVerdict,
    JudgeVote,
    VoteOutcome,
    normalize_verdict,
    semantic_vote,
    tally_votes,
)

__all__ = [
    "AutoformalizationCandidate",
    "CLASSIFICATION_TAXONOMY",
    "CassetteKey",
    "CassetteStore",
    "CommandTransport",
    "ConfigError",
    "DEFAULT_JUDGE_COUNT",
    "DiagnosisFormatError",
    "EndpointRole",
    "ErrorDiagnosis",
    "FEATURE_BATCH_SIZE",
    "FeatureBatchSizeError",
    "FunctionTransport",
    "Gateway",
    "GatewayMode",
    "HttpTransport",
    "JudgeVerdict",
    "JudgeVote",
    "MissingCassetteError",
    "ModelEndpoint",
    "ProverStrategy",
    "ProviderRequestError",
    "RetriesExhaustedError",
    "Transport",
    "TransportError",
    "UnknownCategoryError",
    "VoteOutcome",
    "autoformalize",
    "build_autoformalize_prompt",
    "build_domain_classification_prompt",
    "build_error_classification_prompt",
    "build_error_feature_prompt",
    "build_prover_prompt",
    "build_semantic_judge_prompt",
    "diagnose_features",
    "endpoints_by_role",
    "extract_code_block",
    "load_endpoints",
    "normalize_verdict",
    "parse_error_classification",
    "parse_feature_list",
    "prompt_hash",
    "proof_stub",
    "semantic_vote",
    "suggest_theorem_name",
    "tally_votes",
    "transport_for",
    "two_stage_diagnosis",
]
