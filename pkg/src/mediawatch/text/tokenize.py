"""Unicode-aware tokenization with character spans."""

from __future__ import annotations

import re
from dataclasses import dataclass

# Runs of letters/digits; underscore is treated as a boundary.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int

    @property
    def lower(self) -> str:
        return self.text.lower()


def tokenize(text: str) -> list[Token]:
    """Split on non-alphanumeric boundaries; empty text gives an empty list."""
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


def lower_tokens(text: str) -> list[str]:
    return [m.group().lower() for m in _TOKEN_RE.finditer(text)]
