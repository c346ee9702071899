"""Character n-gram language identification.

Each supported language ships a small seed corpus under profiles/; a profile
is the language's top-300 character n-grams with counts. Spaced scripts use
trigrams; logographic (CJK) text uses 1-3 grams, because individual hanzi
repeat heavily while exact three-character sequences rarely recur outside
the seed domain. Detection is cosine similarity between the input's n-gram
counts and each profile, with a floor below which "und" is returned.
Everything is offline, deterministic, and a pure function of the input text.
"""

from __future__ import annotations

import math
from collections import Counter
from importlib import resources

from mediawatch.config import DEFAULT_LANGUAGES

PROFILE_SIZE = 300
DEFAULT_THRESHOLD = 0.15

_CJK_RANGES = ((0x3400, 0x4DBF), (0x4E00, 0x9FFF), (0xF900, 0xFAFF))


def _is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def _clean(text: str) -> str:
    """Case-folded letters with non-letter runs collapsed to single spaces."""
    chars = []
    prev_space = True
    for ch in text.lower():
        if ch.isalpha():
            chars.append(ch)
            prev_space = False
        elif not prev_space:
            chars.append(" ")
            prev_space = True
    stripped = "".join(chars).strip()
    return f" {stripped} " if stripped else ""


def _grams(cleaned: str, n: int) -> Counter[str]:
    counts: Counter[str] = Counter()
    for i in range(len(cleaned) - n + 1):
        gram = cleaned[i : i + n]
        if gram.strip():
            counts[gram] += 1
    return counts


def trigram_counts(text: str) -> Counter[str]:
    """Trigram counts over the letters of *text*.

    Non-letters map to a single space, case is folded, and only trigrams
    containing at least one letter are kept, so digit/punctuation-only text
    produces an empty counter.
    """
    return _grams(_clean(text), 3)


def ngram_counts(text: str) -> Counter[str]:
    """Script-aware n-gram counts: 1-3 grams for CJK-dominant text, else trigrams."""
    cleaned = _clean(text)
    letters = cleaned.replace(" ", "")
    if not letters:
        return Counter()
    if sum(_is_cjk(ch) for ch in letters) * 2 >= len(letters):
        counts = _grams(cleaned, 3)
        counts.update(_grams(cleaned, 2))
        counts.update(_grams(cleaned, 1))
        return counts
    return _grams(cleaned, 3)


def cosine(a: Counter[str], b: Counter[str]) -> float:
    if not a or not b:
        return 0.0
    # iterate over the smaller counter
    if len(a) > len(b):
        a, b = b, a
    dot = sum(v * b[k] for k, v in a.items() if k in b)
    if dot == 0:
        return 0.0
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    return dot / (na * nb)


class LanguageDetector:
    """Trigram-profile detector over a fixed language set."""

    def __init__(
        self,
        languages: tuple[str, ...] = DEFAULT_LANGUAGES,
        threshold: float = DEFAULT_THRESHOLD,
    ) -> None:
        self.threshold = threshold
        self.profiles: dict[str, Counter[str]] = {}
        for lang in languages:
            self.profiles[lang] = self._load_profile(lang)

    @staticmethod
    def _load_profile(lang: str) -> Counter[str]:
        ref = resources.files("mediawatch.ingest") / "profiles" / f"{lang}.txt"
        text = ref.read_text(encoding="utf-8")
        counts = ngram_counts(text)
        return Counter(dict(counts.most_common(PROFILE_SIZE)))

    def detect(self, text: str) -> str:
        """Best-matching language code, or "und" below the similarity floor.

        Raises ValueError on empty (or whitespace-only) input.
        """
        if not text.strip():
            raise ValueError("cannot detect language of empty text")
        counts = ngram_counts(text)
        if not counts:
            return "und"
        best_lang = "und"
        best_score = 0.0
        for lang, profile in self.profiles.items():
            score = cosine(counts, profile)
            if score > best_score:
                best_lang, best_score = lang, score
        if best_score < self.threshold:
            return "und"
        return best_lang


_default_detector: LanguageDetector | None = None


def detect_language(text: str) -> str:
    """Module-level convenience using the default ten-language detector."""
    global _default_detector
    if _default_detector is None:
        _default_detector = LanguageDetector()
    return _default_detector.detect(text)
