"""Near-duplicate primitives: word shingles, bottom-k sketches, and the
two similarity measures used to confirm a duplicate.

A sketch keeps the k smallest of a document's shingle hashes. Similar
documents produce substantially similar samples, so comparing sketches
estimates Jaccard similarity without touching full shingle sets. Sketch
agreement proposes a duplicate; word-triplet overlap confirms it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from mediawatch.hashing import SHINGLE_SEED, hash64


@dataclass(frozen=True)
class BottomKSketch:
    k: int
    hashes: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.hashes) > self.k:
            raise ValueError("sketch longer than k")
        if any(a >= b for a, b in zip(self.hashes, self.hashes[1:])):
            raise ValueError("sketch hashes must be strictly increasing")


def shingle(tokens, w: int = 3) -> set[int]:
    """Distinct 64-bit hashes of every w-word window, lowercased.

    Fewer than w tokens yields the empty set.
    """
    if w not in (3, 4):
        raise ValueError("shingle width must be 3 or 4")
    lowered = [t.lower() for t in tokens]
    return {
        hash64(" ".join(lowered[i : i + w]), SHINGLE_SEED)
        for i in range(len(lowered) - w + 1)
    }


def sketch(shingles, k: int = 64) -> BottomKSketch:
    """The k smallest shingle hashes, ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return BottomKSketch(k=k, hashes=tuple(sorted(heapq.nsmallest(k, shingles))))


def estimate_jaccard(s1: BottomKSketch, s2: BottomKSketch) -> float:
    """Jaccard estimate from two bottom-k sketches of the same k.

    Uses the k smallest of the union as the sample M and counts how much of
    M both sides contain. Exact whenever the union fits inside k. Two empty
    sketches estimate 1.0: empty documents are duplicates by convention.
    """
    if s1.k != s2.k:
        raise ValueError(f"sketch size mismatch: {s1.k} != {s2.k}")
    a, b = s1.hashes, s2.hashes
    if not a and not b:
        return 1.0
    # Both tuples are ascending, so walking them in step enumerates the
    # union in order; the first k union values are the sample M.
    k = s1.k
    i = j = taken = hits = 0
    len_a, len_b = len(a), len(b)
    while taken < k and (i < len_a or j < len_b):
        if j >= len_b:
            i += 1
        elif i >= len_a:
            j += 1
        elif a[i] < b[j]:
            i += 1
        elif b[j] < a[i]:
            j += 1
        else:
            hits += 1
            i += 1
            j += 1
        taken += 1
    return hits / taken


def triplet_overlap(tokens_a, tokens_b) -> float:
    """Fraction of the smaller document's distinct word triplets shared.

    The min-size denominator keeps a short wire story that was embedded in
    a longer article scoring high. Two documents too short to have any
    triplets count as identical, matching the empty-sketch convention.
    """
    ta = shingle(tokens_a, 3)
    tb = shingle(tokens_b, 3)
    if not ta and not tb:
        return 1.0
    return len(ta & tb) / max(1, min(len(ta), len(tb)))
