"""Greedy longest-match phrase tagging over token sequences.

Shared by the medical-lexicon tagger and the gazetteer mention scanner:
both need case-insensitive, left-to-right, non-overlapping longest matches
of multi-word surface forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from mediawatch.text.tokenize import Token, tokenize


@dataclass
class PhraseMatch:
    payload: Any  # whatever the phrase was registered with
    surface: str  # the matched text as it appears in the input
    start: int
    end: int
    n_tokens: int


class PhraseMatcher:
    def __init__(self) -> None:
        # first lowercased token -> list of (token tuple, payload),
        # longest phrases first
        self._by_first: dict[str, list[tuple[tuple[str, ...], Any]]] = {}
        self._max_len = 0

    def add(self, phrase: str, payload: Any) -> None:
        words = tuple(t.lower for t in tokenize(phrase))
        if not words:
            return
        bucket = self._by_first.setdefault(words[0], [])
        bucket.append((words, payload))
        bucket.sort(key=lambda e: len(e[0]), reverse=True)
        self._max_len = max(self._max_len, len(words))

    def add_many(self, phrases: Iterable[tuple[str, Any]]) -> None:
        for phrase, payload in phrases:
            self.add(phrase, payload)

    def find(self, text: str) -> list[PhraseMatch]:
        return self.find_tokens(tokenize(text), text)

    def find_tokens(self, tokens: list[Token], text: str) -> list[PhraseMatch]:
        """Left-to-right greedy scan; a match consumes its tokens, so the
        output spans never overlap."""
        matches: list[PhraseMatch] = []
        lowers = [t.lower for t in tokens]
        i = 0
        n = len(tokens)
        while i < n:
            bucket = self._by_first.get(lowers[i])
            if bucket:
                for words, payload in bucket:
                    ln = len(words)
                    if i + ln <= n and tuple(lowers[i : i + ln]) == words:
                        start = tokens[i].start
                        end = tokens[i + ln - 1].end
                        matches.append(
                            PhraseMatch(payload, text[start:end], start, end, ln)
                        )
                        i += ln
                        break
                else:
                    i += 1
            else:
                i += 1
        return matches
