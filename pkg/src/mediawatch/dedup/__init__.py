"""Near-duplicate detection and clustering."""

from mediawatch.dedup.clusters import ClusterIndex, DuplicateCluster
from mediawatch.dedup.sketch import (
    BottomKSketch,
    estimate_jaccard,
    shingle,
    sketch,
    triplet_overlap,
)

__all__ = [
    "BottomKSketch",
    "ClusterIndex",
    "DuplicateCluster",
    "estimate_jaccard",
    "shingle",
    "sketch",
    "triplet_overlap",
]
