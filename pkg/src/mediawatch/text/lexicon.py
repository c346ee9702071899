"""Medical keyword lexicon: loading, blacklist, and document tagging."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from mediawatch.text.matcher import PhraseMatcher


@dataclass
class LexiconEntry:
    canonical_id: str  # UMLS-style concept id, e.g. "C0021400"
    preferred_name: str
    semantic_type: str
    generic: bool  # generic entries are excluded from narrative discovery
    surfaces: list[str]

    def __post_init__(self) -> None:
        if not self.surfaces:
            raise ValueError(f"lexicon entry {self.canonical_id} has no surfaces")
        self.surfaces = [s.lower() for s in self.surfaces]


@dataclass
class KeywordMention:
    canonical_id: str
    surface: str
    span: tuple[int, int]
    field: str  # "title" | "body"


class Lexicon:
    def __init__(self, entries: list[LexiconEntry]) -> None:
        self.entries: dict[str, LexiconEntry] = {}
        self.matcher = PhraseMatcher()
        for entry in entries:
            if entry.canonical_id in self.entries:
                raise ValueError(f"duplicate canonical_id {entry.canonical_id}")
            self.entries[entry.canonical_id] = entry
            for surface in entry.surfaces:
                self.matcher.add(surface, entry)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, canonical_id: str) -> LexiconEntry | None:
        return self.entries.get(canonical_id)

    def is_generic(self, canonical_id: str) -> bool:
        entry = self.entries.get(canonical_id)
        return entry.generic if entry else True

    @classmethod
    def load(cls, path: str | Path) -> "Lexicon":
        """TSV: canonical_id, preferred_name, semantic_type, generic(0|1),
        pipe-separated surfaces."""
        entries = []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise ValueError(f"lexicon line {lineno}: expected 5 fields, got {len(parts)}")
            cid, name, sem_type, generic, surfaces = parts
            entries.append(
                LexiconEntry(
                    canonical_id=cid,
                    preferred_name=name,
                    semantic_type=sem_type,
                    generic=generic.strip() == "1",
                    surfaces=[s for s in surfaces.split("|") if s.strip()],
                )
            )
        return cls(entries)


def load_blacklist(path: str | Path) -> set[str]:
    """One lowercased surface per line."""
    out = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            out.add(line)
    return out


def tag_keywords(doc, lexicon: Lexicon, blacklist: set[str] | None = None) -> list[KeywordMention]:
    """Longest-match keyword mentions over working title and body.

    Matches whose surface lowercases to a blacklisted form are dropped.
    """
    blacklist = blacklist or set()
    mentions: list[KeywordMention] = []
    for field_name in ("title", "body"):
        text = doc.field_text(field_name)
        for m in lexicon.matcher.find(text):
            if m.surface.lower() in blacklist:
                continue
            mentions.append(
                KeywordMention(
                    canonical_id=m.payload.canonical_id,
                    surface=m.surface,
                    span=(m.start, m.end),
                    field=field_name,
                )
            )
    return mentions
