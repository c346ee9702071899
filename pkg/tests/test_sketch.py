"""Bottom-k sketches and similarity estimation."""

import heapq
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediawatch.dedup.sketch import (
    BottomKSketch,
    estimate_jaccard,
    shingle,
    sketch,
    triplet_overlap,
)
from mediawatch.hashing import SHINGLE_SEED, hash64


def words(n, prefix="w"):
    return [f"{prefix}{i}" for i in range(n)]


def test_shingle_hashes_are_window_hashes():
    got = shingle(["A", "b", "C", "d"], 3)
    expected = {hash64("a b c", SHINGLE_SEED), hash64("b c d", SHINGLE_SEED)}
    assert got == expected


def test_shingle_too_few_tokens():
    assert shingle(["a", "b"], 3) == set()
    assert shingle([], 3) == set()


def test_shingle_width_validation():
    with pytest.raises(ValueError):
        shingle(["a", "b", "c"], 5)


def test_sketch_keeps_k_smallest_sorted():
    hashes = {hash64(w, SHINGLE_SEED) for w in words(200)}
    sk = sketch(hashes, k=16)
    assert sk.hashes == tuple(sorted(hashes)[:16])
    assert len(sk.hashes) == 16


def test_sketch_of_small_set_is_the_set():
    hashes = {5, 2, 9}
    assert sketch(hashes, k=64).hashes == (2, 5, 9)


def test_sketch_validation():
    with pytest.raises(ValueError):
        BottomKSketch(k=2, hashes=(1, 2, 3))
    with pytest.raises(ValueError):
        BottomKSketch(k=4, hashes=(2, 2))
    with pytest.raises(ValueError):
        sketch({1}, k=0)


def test_mismatched_k_rejected():
    with pytest.raises(ValueError):
        estimate_jaccard(sketch({1}, k=4), sketch({1}, k=8))


def test_empty_sketches_estimate_one():
    assert estimate_jaccard(sketch(set(), k=64), sketch(set(), k=64)) == 1.0


def test_estimate_exact_when_union_fits():
    # union of 20 hashes fits in k=64, so the estimate is the true Jaccard
    a = {hash64(w, SHINGLE_SEED) for w in words(15)}
    b = {hash64(w, SHINGLE_SEED) for w in words(15, prefix="x")} | set(list(a)[:5])
    sa, sb = sketch(a, 64), sketch(b, 64)
    true_j = len(a & b) / len(a | b)
    assert estimate_jaccard(sa, sb) == pytest.approx(true_j)


def test_estimate_tracks_true_jaccard_on_overlapping_ranges():
    # h(1..100) vs h(51..150): true Jaccard 50/150 = 1/3
    a = {hash64(str(i), SHINGLE_SEED) for i in range(1, 101)}
    b = {hash64(str(i), SHINGLE_SEED) for i in range(51, 151)}
    est = estimate_jaccard(sketch(a, 64), sketch(b, 64))
    assert est == pytest.approx(1 / 3, abs=0.15)


def test_estimate_against_full_sort_oracle():
    # independent oracle: k smallest of the union via plain sorted()
    rng = random.Random(42)
    a = {rng.getrandbits(64) for _ in range(500)}
    b = set(rng.sample(sorted(a), 250)) | {rng.getrandbits(64) for _ in range(250)}
    k = 64
    m = sorted(a | b)[:k]
    oracle = sum(1 for h in m if h in a and h in b) / len(m)
    assert estimate_jaccard(sketch(a, k), sketch(b, k)) == oracle


def test_identical_sets_estimate_one():
    a = {hash64(w, SHINGLE_SEED) for w in words(300)}
    assert estimate_jaccard(sketch(a, 64), sketch(a, 64)) == 1.0


def test_disjoint_sets_estimate_zero():
    a = {hash64(w, SHINGLE_SEED) for w in words(100)}
    b = {hash64(w, SHINGLE_SEED) for w in words(100, prefix="z")}
    assert estimate_jaccard(sketch(a, 64), sketch(b, 64)) == 0.0


@settings(max_examples=50)
@given(
    st.sets(st.integers(min_value=0, max_value=2**64 - 1), max_size=200),
    st.sets(st.integers(min_value=0, max_value=2**64 - 1), max_size=200),
)
def test_estimate_is_symmetric_and_bounded(a, b):
    sa, sb = sketch(a, 32), sketch(b, 32)
    est = estimate_jaccard(sa, sb)
    assert 0.0 <= est <= 1.0
    assert est == estimate_jaccard(sb, sa)


@settings(max_examples=50)
@given(st.sets(st.integers(min_value=0, max_value=2**64 - 1), min_size=1, max_size=400))
def test_sketch_is_mergeable(hashes):
    # sketch(A ∪ B) is recoverable from sketch(A) and sketch(B)
    items = sorted(hashes)
    half = len(items) // 2
    a, b = set(items[:half]), set(items[half:])
    k = 16
    merged = sketch(set(sketch(a, k).hashes) | set(sketch(b, k).hashes), k)
    assert merged == sketch(hashes, k)


def test_triplet_overlap_identical():
    toks = "the cholera outbreak spread to the coastal district".split()
    assert triplet_overlap(toks, toks) == 1.0


def test_triplet_overlap_embedded_story():
    short = "cholera outbreak hits the port city of dakar".split()
    long = ("breaking news this morning . " + " ".join(short) + " officials react").split()
    assert triplet_overlap(short, long) > 0.9


def test_triplet_overlap_disjoint():
    assert triplet_overlap("a b c d".split(), "x y z w".split()) == 0.0


def test_triplet_overlap_empty_conventions():
    assert triplet_overlap([], []) == 1.0
    # two tokens yield no triplets at all, so this is also the empty case
    assert triplet_overlap(["one", "two"], []) == 1.0
    # one-sided emptiness is plain dissimilarity
    assert triplet_overlap(["one", "two", "three"], []) == 0.0
