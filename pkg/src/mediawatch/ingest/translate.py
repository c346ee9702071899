"""Pluggable translation clients and the working-text rule.

Translation is additive: the original text always stays on the RawArticle,
and a failed client just leaves the working text equal to the original with
a translation_pending flag on the document.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Protocol

from mediawatch.ingest.langdetect import LanguageDetector
from mediawatch.ingest.models import RawArticle


class TranslationError(RuntimeError):
    pass


class TranslationClient(Protocol):
    def detect(self, text: str) -> str: ...

    def translate(self, text: str, src: str, dst: str) -> str: ...


class StubTranslationClient:
    """Offline stand-in for a remote translation service.

    English passes through unchanged; other languages get a glossary lookup:
    known source phrases are replaced by their English equivalents and the
    rest of the text is carried over as-is. Good enough for tagging known
    terms in fixtures, and honest about being lossy.
    """

    def __init__(self, glossary_path: str | Path | None = None,
                 detector: LanguageDetector | None = None) -> None:
        # glossary[src_lang] is a list of (source_phrase, english) pairs,
        # longest source phrase first so greedy replacement prefers it
        self.glossary: dict[str, list[tuple[str, str]]] = {}
        self._detector = detector
        if glossary_path is not None:
            self.load_glossary(glossary_path)

    def load_glossary(self, path: str | Path) -> None:
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"glossary line {lineno}: expected 3 tab-separated fields")
            lang, source, english = parts
            self.glossary.setdefault(lang, []).append((source, english))
        for entries in self.glossary.values():
            entries.sort(key=lambda e: len(e[0]), reverse=True)

    def detect(self, text: str) -> str:
        if self._detector is None:
            self._detector = LanguageDetector()
        return self._detector.detect(text)

    def translate(self, text: str, src: str, dst: str) -> str:
        if src == dst or src == "en":
            return text
        for source, english in self.glossary.get(src, []):
            text = re.sub(re.escape(source), english, text, flags=re.IGNORECASE)
        return text


class RemoteTranslationClient:
    """HTTP client against a JSON translate endpoint.

    POST {endpoint}/detect    {"text": ...}                  -> {"lang": ...}
    POST {endpoint}/translate {"text", "src", "dst"}         -> {"text": ...}
    """

    def __init__(self, endpoint: str, timeout_s: float = 10.0) -> None:
        self.endpoint = endpoint.rstrip("/")
        self.timeout_s = timeout_s

    def detect(self, text: str) -> str:
        return self._post("/detect", {"text": text})["lang"]

    def translate(self, text: str, src: str, dst: str) -> str:
        return self._post("/translate", {"text": text, "src": src, "dst": dst})["text"]

    def _post(self, path: str, payload: dict) -> dict:
        import requests

        try:
            resp = requests.post(self.endpoint + path, json=payload, timeout=self.timeout_s)
            resp.raise_for_status()
            return resp.json()
        except Exception as exc:
            raise TranslationError(f"translation request failed: {exc}") from exc


def translate_to_working(
    article: RawArticle, lang: str, client: TranslationClient
) -> tuple[str, str, bool]:
    """Working (English) title and body for an article.

    Returns (working_title, working_body, translation_pending). English text
    is passed through byte-identical; on client failure the original text is
    used and translation_pending is True.
    """
    if lang == "en":
        return article.title, article.body, False
    try:
        title = client.translate(article.title, lang, "en") if article.title else ""
        body = client.translate(article.body, lang, "en") if article.body else ""
        return title, body, False
    except Exception:
        return article.title, article.body, True
