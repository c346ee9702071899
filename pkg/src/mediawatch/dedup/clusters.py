"""Clustering of near-duplicate documents.

Candidates come from an inverted index over sketch hashes (any shared
hash) restricted to a trailing time window, so no all-pairs comparison is
ever done. A candidate whose sketch similarity and triplet overlap both
clear their thresholds is confirmed, and the document is unioned with
every confirmed candidate, which makes the final partition the connected
components of the pairwise similarity graph: independent of arrival order.

Duplicates are kept, not dropped. Each cluster exposes the earliest
version as its exemplar and records casualty-count differences between
later copies and that exemplar, because an updated death toll is exactly
the difference worth surfacing.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta

from mediawatch.dedup.sketch import (
    BottomKSketch,
    estimate_jaccard,
    shingle,
    sketch,
)
from mediawatch.text.counts import CasualtyCount
from mediawatch.text.tokenize import lower_tokens


@dataclass(frozen=True)
class DuplicateCluster:
    cluster_id: str
    member_ids: frozenset[str]
    exemplar_id: str
    count_history: tuple[tuple[str, CasualtyCount], ...]


class _DocEntry:
    __slots__ = ("doc_id", "published_at", "fetched_at", "sketch", "shingles", "counts")

    def __init__(self, doc_id, published_at, fetched_at, sk, shingles, counts):
        self.doc_id = doc_id
        self.published_at = published_at
        self.fetched_at = fetched_at
        self.sketch = sk
        self.shingles = shingles
        self.counts = counts

    def order_key(self):
        return (self.published_at, self.fetched_at, self.doc_id)


class ClusterIndex:
    """Single-writer duplicate-cluster state over a document stream."""

    def __init__(
        self,
        k: int = 64,
        shingle_width: int = 3,
        theta_sketch: float = 0.6,
        theta_triplet: float = 0.5,
        window_days: int = 7,
    ):
        if not 0.0 < theta_sketch <= 1.0 or not 0.0 < theta_triplet <= 1.0:
            raise ValueError("thresholds must be in (0, 1]")
        self.k = k
        self.shingle_width = shingle_width
        self.theta_sketch = theta_sketch
        self.theta_triplet = theta_triplet
        self.window = timedelta(days=window_days)
        self._docs: dict[str, _DocEntry] = {}
        self._by_hash: dict[int, list[str]] = {}
        self._parent: dict[str, str] = {}
        self._members: dict[str, set[str]] = {}
        self._exemplar: dict[str, str] = {}
        self._history: dict[str, list[tuple[datetime, str, CasualtyCount]]] = {}
        self._root_by_cluster_id: dict[str, str] = {}

    # union-find over doc ids

    def _find(self, doc_id: str) -> str:
        root = doc_id
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[doc_id] != root:
            self._parent[doc_id], doc_id = root, self._parent[doc_id]
        return root

    def _union(self, a: str, b: str) -> str:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return ra
        if len(self._members[ra]) < len(self._members[rb]):
            ra, rb = rb, ra
        # rb folds into ra
        old_a = min(self._members[ra])
        old_b = min(self._members[rb])
        self._parent[rb] = ra
        self._members[ra].update(self._members[rb])
        del self._members[rb]
        self._history[ra].extend(self._history.pop(rb))
        ex_a, ex_b = self._exemplar[ra], self._exemplar[rb]
        if self._docs[ex_b].order_key() < self._docs[ex_a].order_key():
            self._exemplar[ra] = ex_b
        del self._exemplar[rb]
        self._root_by_cluster_id.pop(old_a, None)
        self._root_by_cluster_id.pop(old_b, None)
        self._root_by_cluster_id[min(self._members[ra])] = ra
        return ra

    def add(self, doc) -> str:
        """Assign *doc* to a cluster and return the cluster id.

        The document must already carry working text and extracted counts.
        Re-adding a known doc_id is a no-op returning its current cluster.
        """
        if doc.doc_id in self._docs:
            return self.cluster_of(doc.doc_id)

        tokens = lower_tokens(doc.working_text())
        shingles = frozenset(shingle(tokens, self.shingle_width))
        sk = sketch(shingles, self.k)
        entry = _DocEntry(
            doc.doc_id,
            doc.published_at,
            doc.fetched_at,
            sk,
            shingles if self.shingle_width == 3 else frozenset(shingle(tokens, 3)),
            tuple(doc.counts),
        )

        confirmed = self._confirmed_candidates(entry)
        self._register(entry)
        for other_id in confirmed:
            self._union(entry.doc_id, other_id)

        root = self._find(entry.doc_id)
        self._record_count_deltas(root, entry)
        return min(self._members[root])

    def _confirmed_candidates(self, entry: _DocEntry) -> list[str]:
        seen: set[str] = set()
        for h in entry.sketch.hashes:
            for other_id in self._by_hash.get(h, ()):
                seen.add(other_id)
        confirmed = []
        for other_id in sorted(seen):
            other = self._docs[other_id]
            gap = abs((entry.published_at - other.published_at).total_seconds())
            if gap > self.window.total_seconds():
                continue
            if estimate_jaccard(entry.sketch, other.sketch) < self.theta_sketch:
                continue
            if _hash_overlap(entry.shingles, other.shingles) < self.theta_triplet:
                continue
            confirmed.append(other_id)
        return confirmed

    def _register(self, entry: _DocEntry) -> None:
        self._docs[entry.doc_id] = entry
        for h in entry.sketch.hashes:
            self._by_hash.setdefault(h, []).append(entry.doc_id)
        self._parent[entry.doc_id] = entry.doc_id
        self._members[entry.doc_id] = {entry.doc_id}
        self._exemplar[entry.doc_id] = entry.doc_id
        self._history[entry.doc_id] = []
        self._root_by_cluster_id[entry.doc_id] = entry.doc_id

    def _record_count_deltas(self, root: str, entry: _DocEntry) -> None:
        exemplar = self._docs[self._exemplar[root]]
        if exemplar.doc_id == entry.doc_id:
            return
        base = {(c.category, c.value) for c in exemplar.counts}
        for count in entry.counts:
            if (count.category, count.value) not in base:
                self._history[root].append((entry.published_at, entry.doc_id, count))

    # queries

    def cluster_of(self, doc_id: str) -> str:
        root = self._find(doc_id)
        return min(self._members[root])

    def get_cluster(self, cluster_id: str) -> DuplicateCluster:
        root = self._root_by_cluster_id.get(cluster_id)
        if root is None:
            # a doc id inside the cluster also addresses it
            if cluster_id not in self._parent:
                raise KeyError(f"unknown cluster {cluster_id}")
            root = self._find(cluster_id)
        return self._build(root)

    def clusters(self) -> list[DuplicateCluster]:
        return [self._build(root) for root in sorted(self._members)]

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def __len__(self) -> int:
        return len(self._docs)

    def _build(self, root: str) -> DuplicateCluster:
        members = self._members[root]
        history = sorted(self._history[root], key=lambda r: (r[0], r[1]))
        return DuplicateCluster(
            cluster_id=min(members),
            member_ids=frozenset(members),
            exemplar_id=self._exemplar[root],
            count_history=tuple((doc_id, count) for _, doc_id, count in history),
        )


def _hash_overlap(a: frozenset[int], b: frozenset[int]) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / max(1, min(len(a), len(b)))
