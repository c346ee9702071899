"""Extractive summaries: pick the sentences that carry the most signal
about a set of keywords across a group of related documents.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache
from importlib import resources

from mediawatch.text.tokenize import lower_tokens

# terminal punctuation then whitespace then a capital starts a new sentence
_BOUNDARY_RE = re.compile(r"([.?!])\s+(?=[A-ZÀ-Þ\"'‘“(])")

# a period after one of these is part of the word, not a sentence end
_ABBREVIATIONS = {"dr", "st", "no", "fig", "mr", "mrs", "ms", "prof", "vs"}

_WORD_BEFORE_RE = re.compile(r"([A-Za-z]+)\.$")


@lru_cache(maxsize=1)
def load_stopwords() -> frozenset[str]:
    raw = resources.files("mediawatch.text").joinpath("data/stopwords.txt")
    words = set()
    for line in raw.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def split_sentences(text: str) -> list[str]:
    """Split on . ? ! followed by whitespace and a capital, keeping
    abbreviation periods (Dr., St., No., Fig.) inside their sentence."""
    pieces: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        end = m.end(1)
        candidate = text[start:end]
        if m.group(1) == ".":
            word = _WORD_BEFORE_RE.search(candidate.strip())
            if word and word.group(1).lower() in _ABBREVIATIONS:
                continue
        piece = candidate.strip()
        if piece:
            pieces.append(piece)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def _keyword_surface_tokens(docs, keywords) -> set[str]:
    wanted = set(keywords)
    tokens: set[str] = set()
    for doc in docs:
        for m in doc.keyword_mentions:
            if m.canonical_id in wanted:
                tokens.update(lower_tokens(m.surface))
    return tokens


def summarize(docs, keywords, n: int = 3) -> list[str]:
    """Top-n sentences across *docs* scored by tf-idf mass on *keywords*.

    Scoring vocabulary is the tokens of the keywords' matched surfaces plus
    content words that share a sentence with one of those tokens; everything
    else, stopwords included, scores zero. idf is computed over the document
    set. Ties go to the earlier document, then the earlier sentence. Repeated
    sentences are reported once.
    """
    if n <= 0 or not docs:
        return []
    stop = load_stopwords()
    surface_tokens = _keyword_surface_tokens(docs, keywords)

    # per-document token presence for idf
    n_docs = len(docs)
    df: dict[str, int] = {}
    doc_sentences = []
    for doc in docs:
        sentences = split_sentences(doc.working_text())
        tokenized = [lower_tokens(s) for s in sentences]
        seen: set[str] = set()
        for toks in tokenized:
            seen.update(toks)
        for tok in seen:
            df[tok] = df.get(tok, 0) + 1
        doc_sentences.append((doc, sentences, tokenized))

    # the scoring vocabulary: surface tokens plus their co-occurring content words
    vocab = set(surface_tokens)
    for _, _, tokenized in doc_sentences:
        for toks in tokenized:
            if surface_tokens.intersection(toks):
                vocab.update(t for t in toks if t not in stop)

    def idf(tok: str) -> float:
        return 1.0 + math.log(n_docs / df[tok])

    scored = []
    for doc_pos, (doc, sentences, tokenized) in enumerate(doc_sentences):
        ts = doc.published_at
        for pos, (sentence, toks) in enumerate(zip(sentences, tokenized)):
            score = sum(idf(t) for t in toks if t in vocab)
            scored.append((score, ts, doc_pos, pos, sentence))

    scored.sort(key=lambda r: (-r[0], r[1], r[2], r[3]))
    out: list[str] = []
    seen_text: set[str] = set()
    for score, _, _, _, sentence in scored:
        if sentence in seen_text:
            continue
        seen_text.add(sentence)
        out.append(sentence)
        if len(out) == n:
            break
    return out
