"""Deterministic approximate tokenizer.

A token is a maximal run of alphanumeric characters or a single
non-space, non-alphanumeric character. The count is monotone and additive
over whitespace-separated concatenation, which is all budgeting needs.
"""

import re
from typing import List

TOKEN_PATTERN = re.compile(r"[^\W_]+|[^\s\w]|_")


def tokenize(text: str) -> List[str]:
    return TOKEN_PATTERN.findall(text)


def count_tokens(text: str) -> int:
    return sum(1 for _ in TOKEN_PATTERN.finditer(text))


def truncate_tokens(text: str, max_tokens: int) -> str:
    """Cut ``text`` right after its ``max_tokens``-th token."""
    if max_tokens <= 0:
        return ""
    for index, match in enumerate(TOKEN_PATTERN.finditer(text), start=1):
        if index == max_tokens:
            return text[: match.end()]
    return text
