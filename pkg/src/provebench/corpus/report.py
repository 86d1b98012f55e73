"""Parser for model-written classification reports.

A report is markdown-ish text with a summary section, a domains section
holding semicolon-separated classification chains, and a closing sentinel
line.  The sentinel is how we tell a complete report from a truncated
completion, so its absence is an error even when the sections parse.
"""

from __future__ import annotations

from .. import errors
from .models import CHAIN_ARROW, MAX_CHAINS_PER_PROBLEM, DomainChain

SUMMARY_HEADING = "## Summarization"
DOMAINS_HEADING = "## Math domains"
REPORT_SENTINEL = "=== report over ==="


class IncompleteReportError(errors.ProvebenchError):
    """Report is missing its sentinel or a required section."""


class ChainCardinalityError(errors.ProvebenchError):
    """Report proposes more chains than a problem may carry."""


def parse_domain_report(text: str) -> list[DomainChain]:
    """Extract the classification chains from a report.

    Raises IncompleteReportError when the sentinel or the domains section is
    missing, ChainCardinalityError on more than three chains, and chain
    validation errors (unknown node, bad root) from the chains themselves.
    """
    lines = text.splitlines()
    stripped = [line.strip() for line in lines]
    if REPORT_SENTINEL not in stripped:
        raise IncompleteReportError(f"report does not end with {REPORT_SENTINEL!r}")
    try:
        start = stripped.index(DOMAINS_HEADING) + 1
    except ValueError:
        raise IncompleteReportError(f"report has no {DOMAINS_HEADING!r} section") from None
    body: list[str] = []
    for line in stripped[start:]:
        if line == REPORT_SENTINEL or line.startswith("## "):
            break
        body.append(line)
    chain_texts = [part.strip() for part in " ".join(body).split(";")]
    chain_texts = [part for part in chain_texts if part]
    if len(chain_texts) > MAX_CHAINS_PER_PROBLEM:
        raise ChainCardinalityError(
            f"report proposes {len(chain_texts)} chains, limit is {MAX_CHAINS_PER_PROBLEM}"
        )
    return [DomainChain.parse(part) for part in chain_texts]


def render_chains(chains: list[DomainChain]) -> str:
    """Inverse of parse for the domains section body."""
    return "; ".join(chain.render() for chain in chains) + (";" if chains else "")


__all__ = [
    "CHAIN_ARROW",
    "DOMAINS_HEADING",
    "REPORT_SENTINEL",
    "SUMMARY_HEADING",
    "ChainCardinalityError",
    "IncompleteReportError",
    "parse_domain_report",
    "render_chains",
]
