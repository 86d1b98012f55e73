"""Prompt templates for every model role.

The report sentinel, section headings, arrow syntax, verdict instruction,
and category names are load-bearing: parsers on the receiving side match
them literally.  Change them and the parsers stop understanding replies.
"""

from __future__ import annotations

import enum
import re

from ..corpus import report, taxonomy

SEMANTIC_JUDGE_TEMPLATE = """\
You are checking whether a formal theorem statement faithfully captures a
natural-language math problem.

Workflow:
1. Translate the formal statement back into natural language, keeping every
   hypothesis, quantifier, constant, and the conclusion.
2. Compare that back-translation with the original problem: hypotheses,
   goal, and side conditions must match in both directions, with no added
   or dropped constraints.
3. Decide whether the two state the same mathematical claim.

Original problem:
{problem}

Formal statement:
{statement}

You must remember :Return True or False directly. Accept only True/False in answer.
"""


def build_semantic_judge_prompt(problem_text: str, statement_source: str) -> str:
    return SEMANTIC_JUDGE_TEMPLATE.format(
        problem=problem_text.strip(), statement=statement_source.strip()
    )


DOMAIN_CLASSIFICATION_TEMPLATE = """\
Classify the math problem below into the following domain tree:

{tree}

Write your report in two sections.

{summary_heading}
Summarize the problem and what it asks for.

{domains_heading}
Give at most 3 classification chains separated by semicolons. Each chain is
a path from the root, for example:
Mathematics -> Algebra -> Prealgebra -> Fractions;
Your classification MUST fall under one of the subfields shown above.
Only the LAST NODE is allowed to be 'Other'.

Problem:
{problem}

Add '{sentinel}' at the end of your report.
"""


def build_domain_classification_prompt(problem_text: str) -> str:
    return DOMAIN_CLASSIFICATION_TEMPLATE.format(
        tree=taxonomy.render_tree(),
        summary_heading=report.SUMMARY_HEADING,
        domains_heading=report.DOMAINS_HEADING,
        problem=problem_text.strip(),
        sentinel=report.REPORT_SENTINEL,
    )


AUTOFORMALIZE_TEMPLATE = """\
Translate the math problem below into a formal Lean 4 theorem statement.

Rules:
- Output one complete source block: imports, any helper definitions, then
  exactly one theorem named {theorem_name}.
- Formalize the statement only; end it with ':= by' and the body 'sorry'.

Problem:
{problem}
"""

_IDENTIFIER_RE = re.compile(r"[^A-Za-z0-9_]+")


def suggest_theorem_name(problem_id: str) -> str:
    name = _IDENTIFIER_RE.sub("_", problem_id).strip("_")
    if not name or name[0].isdigit():
        name = f"problem_{name}" if name else "problem"
    return name


def build_autoformalize_prompt(problem_text: str, theorem_name: str) -> str:
    return AUTOFORMALIZE_TEMPLATE.format(
        theorem_name=theorem_name, problem=problem_text.strip()
    )


class ProverStrategy(enum.Enum):
    VANILLA = "vanilla"
    COT = "cot"
    NL_AUGMENTED = "nl_augmented"


VANILLA_PROVER_TEMPLATE = """\
Complete the following Lean 4 code:

```lean4
{code}
```
"""

COT_PROVER_TEMPLATE = """\
Complete the following Lean 4 code with explanatory comments preceding each line of code:

```lean4
{code}
```
"""


def proof_stub(statement_source: str) -> str:
    """``statement_source`` cut right after ':= by', ready for a completion.

    Appending a prover completion to the stub yields checkable code.
    """
    code = statement_source.rstrip()
    if code.endswith("sorry"):
        code = code[: -len("sorry")].rstrip()
    return code


def build_prover_prompt(
    statement_source: str,
    strategy: ProverStrategy = ProverStrategy.VANILLA,
    nl_solution: str | None = None,
) -> str:
    """Prompt asking a prover to finish ``statement_source``.

    The code block ends right after ':= by' so the completion is the tactic
    body.  NL_AUGMENTED embeds the informal solution as a comment ahead of
    the theorem, and requires one.
    """
    code = proof_stub(statement_source)
    if strategy is ProverStrategy.VANILLA:
        return VANILLA_PROVER_TEMPLATE.format(code=code)
    if strategy is ProverStrategy.COT:
        return COT_PROVER_TEMPLATE.format(code=code)
    if nl_solution is None:
        raise ValueError("nl_augmented strategy needs an informal solution")
    annotated = f"/- {nl_solution.strip()} -/\n{code}"
    return COT_PROVER_TEMPLATE.format(code=annotated)


ERROR_FEATURE_TEMPLATE = """\
Below are {count} failed proof attempts from a single prover. Identify the
recurring failure features across them and return each feature as a short
label.

{snippets}

Return the feature labels as a JSON list of strings.
"""


def build_error_feature_prompt(snippets: list[str]) -> str:
    blocks = [
        f"Failed proof {index}:\n```lean4\n{snippet.strip()}\n```"
        for index, snippet in enumerate(snippets, start=1)
    ]
    return ERROR_FEATURE_TEMPLATE.format(count=len(snippets), snippets="\n\n".join(blocks))


ERROR_CLASSIFICATION_TEMPLATE = """\
Classify the failed proof attempt below. Pick every category that applies
from this list and no others:

{categories}

Failure features observed across this prover's attempts:
{features}

Failed proof:
```lean4
{snippet}
```

Return a JSON object shaped exactly like
{{"categories": ["..."], "confidence": [0.0], "explanation": "..."}}
with one confidence value in [0, 1] per chosen category.
"""


def build_error_classification_prompt(
    snippet: str, features: list[str], categories: tuple[str, ...]
) -> str:
    return ERROR_CLASSIFICATION_TEMPLATE.format(
        categories="\n".join(f"- {c}" for c in categories),
        features="\n".join(f"- {f}" for f in features) or "- (none)",
        snippet=snippet.strip(),
    )
