"""Heuristic person/organization tagging.

Capitalization-driven, no statistical NER: persons need an honorific or a
", <job title>" appositive, organizations need a cue word or a parenthesized
acronym. Later bare acronyms matching the initials of an organization seen
earlier in the same document are consolidated to its full name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mediawatch.text.tokenize import Token, tokenize

HONORIFICS = {"dr", "mr", "mrs", "ms", "prof", "professor"}
ORG_CUES = {"ministry", "organization", "organisation", "agency", "institute",
            "university", "hospital", "centre", "center", "commission"}
# lowercase words allowed inside a capitalized run when a capitalized token follows
CONNECTORS = {"of", "for", "and", "the"}

_ACRONYM_RE = re.compile(r"^[A-Z]{2,}$")
_HONORIFIC_GAP_RE = re.compile(r"^\.?\s+$")


@dataclass
class EntityMention:
    kind: str  # "person" | "organization"
    name: str
    span: tuple[int, int]  # into the combined working text (title \n body)
    title_phrase: str | None = None


def tag_entities(doc, title_lexicon: set[str] | None = None) -> list[EntityMention]:
    """Tag persons and organizations in a document's working text.

    Spans refer to doc.working_text() (title, newline, body).
    """
    return tag_entities_in_text(doc.working_text(), title_lexicon)


def tag_entities_in_text(text: str, title_lexicon: set[str] | None = None) -> list[EntityMention]:
    title_lexicon = {t.lower() for t in (title_lexicon or set())}
    tokens = tokenize(text)
    runs = _capitalized_runs(tokens, text)

    mentions: list[EntityMention] = []
    org_initials: dict[str, str] = {}  # UPPERCASE initials -> canonical name
    consumed: set[int] = set()  # token indexes already inside a mention

    for start, end in runs:  # token index range [start, end)
        run = tokens[start:end]
        words = [t.text for t in run]

        # organization: cue word in the run, or a "(ACRO)" right after it
        acro = _parenthesized_acronym(text, run[-1].end)
        if any(w.lower() in ORG_CUES for w in words) or acro:
            name_tokens = run[1:] if words[0] == "The" and len(run) > 1 else run
            name = " ".join(t.text for t in name_tokens)
            mentions.append(
                EntityMention("organization", name, (name_tokens[0].start, name_tokens[-1].end))
            )
            consumed.update(range(start, end))
            for initials in _initial_variants(name):
                org_initials.setdefault(initials, name)
            if acro:
                org_initials.setdefault(acro, name)
            continue

        # person: honorific just before the run ("Dr. Maria Santos") or as its
        # first token ("Mr Smith"), or a ", <job title>" appositive after it
        name_tokens = run
        honorific = False
        if words[0].lower() in HONORIFICS:
            honorific = True
            name_tokens = run[1:]
        elif start > 0 and tokens[start - 1].lower in HONORIFICS:
            gap = text[tokens[start - 1].end : run[0].start]
            if _HONORIFIC_GAP_RE.match(gap):
                honorific = True
        if not name_tokens:
            continue
        title_phrase = _appositive_title(text, run[-1].end, title_lexicon)
        if honorific or (title_phrase is not None and len(name_tokens) >= 2):
            name = " ".join(t.text for t in name_tokens)
            mentions.append(
                EntityMention(
                    "person",
                    name,
                    (name_tokens[0].start, name_tokens[-1].end),
                    title_phrase=title_phrase,
                )
            )
            consumed.update(range(start, end))

    # bare acronyms consolidating to an earlier organization
    for i, tok in enumerate(tokens):
        if i in consumed or not _ACRONYM_RE.match(tok.text):
            continue
        if _inside_parens(text, tok):
            continue  # the "(WHO)" introducing the acronym is not a mention
        canonical = org_initials.get(tok.text)
        if canonical:
            mentions.append(EntityMention("organization", canonical, (tok.start, tok.end)))

    mentions.sort(key=lambda m: m.span)
    return mentions


def _capitalized_runs(tokens: list[Token], text: str) -> list[tuple[int, int]]:
    """Maximal runs of capitalized tokens separated only by whitespace.

    Interior lowercase connectors (of/for/and/the) are allowed when a
    capitalized token follows; any punctuation in a gap breaks the run, so
    "Organization (WHO)" and "Santos, chief" split where they should.
    """

    def joined(a: Token, b: Token) -> bool:
        return text[a.end : b.start].strip() == ""

    runs = []
    i = 0
    n = len(tokens)
    while i < n:
        if not _is_cap(tokens[i]):
            i += 1
            continue
        j = i + 1
        while j < n and joined(tokens[j - 1], tokens[j]):
            if _is_cap(tokens[j]):
                j += 1
            elif (
                tokens[j].lower in CONNECTORS
                and j + 1 < n
                and _is_cap(tokens[j + 1])
                and joined(tokens[j], tokens[j + 1])
            ):
                j += 2
            else:
                break
        runs.append((i, j))
        i = j
    return runs


def _is_cap(tok: Token) -> bool:
    return tok.text[0].isupper() and any(c.isalpha() for c in tok.text)


def _parenthesized_acronym(text: str, pos: int) -> str | None:
    m = re.match(r"\s*\(([A-Z]{2,})\)", text[pos:])
    return m.group(1) if m else None


def _inside_parens(text: str, tok: Token) -> bool:
    before = text[max(0, tok.start - 1) : tok.start]
    after = text[tok.end : tok.end + 1]
    return before == "(" and after == ")"


def _appositive_title(text: str, pos: int, title_lexicon: set[str]) -> str | None:
    """Match ", <job title>" right after a name; returns the title phrase."""
    m = re.match(r"\s*,\s*", text[pos:])
    if not m:
        return None
    rest = text[pos + m.end() :]
    rest_lower = rest.lower()
    best = None
    for phrase in title_lexicon:
        if rest_lower.startswith(phrase):
            if best is None or len(phrase) > len(best):
                best = phrase
    if best is None:
        return None
    return rest[: len(best)]


def _initial_variants(name: str) -> list[str]:
    """Possible acronym spellings: initials of capitalized tokens, and of all
    tokens (so both MH and MOH can point at Ministry of Health)."""
    words = name.split()
    cap = "".join(w[0] for w in words if w[0].isupper()).upper()
    full = "".join(w[0] for w in words).upper()
    return [v for v in {cap, full} if len(v) >= 2]
