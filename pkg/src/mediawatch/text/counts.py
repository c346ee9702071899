"""Extraction of casualty figures (deaths, cases, hospitalizations).

Updated figures are the detail that distinguishes otherwise near-identical
republications of one story, so they are pulled out as structured values and
compared across a duplicate cluster rather than left inside the prose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

CATEGORIES = ("deaths", "cases", "hospitalized")

# digits with optional comma thousands separators: 7, 1204, 1,204
_NUM = r"(\d{1,3}(?:,\d{3})+|\d+)"

_UNIT_CATEGORY = {
    "death": "deaths",
    "deaths": "deaths",
    "dead": "deaths",
    "case": "cases",
    "cases": "cases",
    "infection": "cases",
    "infections": "cases",
    "hospitalized": "hospitalized",
    "hospitalised": "hospitalized",
}

_SIMPLE_RE = re.compile(
    _NUM + r"\s+(deaths?|dead|cases?|infections?|hospitalized|hospitalised)\b",
    re.IGNORECASE,
)

_TOLL_RE = re.compile(
    r"\b(death toll|case count)\s+(?:rises|rose|climbs|climbed)\s+to\s+" + _NUM,
    re.IGNORECASE,
)

_TOLL_CATEGORY = {"death toll": "deaths", "case count": "cases"}


@dataclass(frozen=True)
class CasualtyCount:
    category: str
    value: int
    span: tuple[int, int]

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if self.value < 0:
            raise ValueError("count value must be non-negative")


def _parse_int(digits: str) -> int:
    return int(digits.replace(",", ""))


def extract_counts(text: str) -> list[CasualtyCount]:
    """Find casualty figures in *text*, in order of appearance.

    Two shapes are recognized: a number followed by a unit word ("12 deaths",
    "1,204 cases") and the narrative toll form ("death toll rose to 98").
    Values are always digit sequences from the text itself, never inferred.
    """
    found: list[CasualtyCount] = []
    digit_spans: list[tuple[int, int]] = []

    for m in _TOLL_RE.finditer(text):
        category = _TOLL_CATEGORY[m.group(1).lower()]
        found.append(CasualtyCount(category, _parse_int(m.group(2)), m.span()))
        digit_spans.append(m.span(2))

    for m in _SIMPLE_RE.finditer(text):
        # skip when the toll form already consumed this number
        start, end = m.span(1)
        if any(start < e and s < end for s, e in digit_spans):
            continue
        category = _UNIT_CATEGORY[m.group(2).lower()]
        found.append(CasualtyCount(category, _parse_int(m.group(1)), m.span()))

    found.sort(key=lambda c: c.span)
    return found
