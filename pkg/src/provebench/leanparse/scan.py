"""Low-level source scanning: comment stripping, delimiter matching,
token streams.

The statement grammar is deliberately shallow.  We never parse terms, we
only track delimiter depth, which is enough to find the signature colon,
the proof marker, and top-level operators.  Sources are normalized to NFC
first so that visually identical operators compare equal.
"""

from __future__ import annotations

import unicodedata

from .. import errors

OPEN_TO_CLOSE = {"(": ")", "{": "}", "[": "]", "⟨": "⟩", "⦃": "⦄"}
CLOSE_TO_OPEN = {close: open_ for open_, close in OPEN_TO_CLOSE.items()}

LINE_COMMENT = "--"
BLOCK_OPEN = "/-"
BLOCK_CLOSE = "-/"


class DelimiterError(errors.ProvebenchError):
    """Unbalanced bracket or unterminated comment."""

    def __init__(self, text: str, offset: int, reason: str):
        self.offset = offset
        self.line, self.column = line_col(text, offset)
        super().__init__(f"{reason} at line {self.line}, column {self.column}")


def normalize_source(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def line_col(text: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of ``offset`` in ``text``."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def strip_comments(text: str) -> str:
    """Blank out comments, preserving length and newlines.

    Offsets into the result are valid offsets into the original, which is
    what lets the parser slice fragments out of the raw source.
    """
    out = list(text)
    i = 0
    size = len(text)
    while i < size:
        if text.startswith(LINE_COMMENT, i):
            end = text.find("\n", i)
            end = size if end == -1 else end
            for p in range(i, end):
                out[p] = " "
            i = end
        elif text.startswith(BLOCK_OPEN, i):
            depth = 1
            j = i + 2
            while j < size and depth:
                if text.startswith(BLOCK_OPEN, j):
                    depth += 1
                    j += 2
                elif text.startswith(BLOCK_CLOSE, j):
                    depth -= 1
                    j += 2
                else:
                    j += 1
            if depth:
                raise DelimiterError(text, i, "unterminated block comment")
            for p in range(i, j):
                if out[p] != "\n":
                    out[p] = " "
            i = j
        else:
            i += 1
    return "".join(out)


def check_balanced(text: str) -> None:
    """Raise DelimiterError on the first unbalanced delimiter."""
    stack: list[tuple[str, int]] = []
    for i, ch in enumerate(text):
        if ch in OPEN_TO_CLOSE:
            stack.append((ch, i))
        elif ch in CLOSE_TO_OPEN:
            if not stack or stack[-1][0] != CLOSE_TO_OPEN[ch]:
                raise DelimiterError(text, i, f"unmatched {ch!r}")
            stack.pop()
    if stack:
        opener, offset = stack[-1]
        raise DelimiterError(text, offset, f"unclosed {opener!r}")


def match_delimiter(text: str, start: int) -> int:
    """Index of the closer matching the opener at ``start``."""
    want = [OPEN_TO_CLOSE[text[start]]]
    i = start + 1
    while i < len(text):
        ch = text[i]
        if ch in OPEN_TO_CLOSE:
            want.append(OPEN_TO_CLOSE[ch])
        elif ch in CLOSE_TO_OPEN:
            if ch != want[-1]:
                raise DelimiterError(text, i, f"unmatched {ch!r}")
            want.pop()
            if not want:
                return i
        i += 1
    raise DelimiterError(text, start, f"unclosed {text[start]!r}")


def iter_depth0(text: str, start: int = 0, end: int | None = None):
    """Yield indices of characters sitting outside every delimiter pair."""
    depth = 0
    end = len(text) if end is None else end
    for i in range(start, end):
        ch = text[i]
        if ch in OPEN_TO_CLOSE:
            depth += 1
        elif ch in CLOSE_TO_OPEN:
            depth -= 1
        elif depth == 0:
            yield i


def skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def token_stream(text: str) -> list[str]:
    """Whitespace-delimited tokens of the NFC-normalized text."""
    return normalize_source(text).split()
