"""mediawatch: desk-scale media surveillance engine.

Ingests news-like documents, detects language and obtains English working
text, tags medical/geographic/named entities, scores relevance, clusters
near-duplicates, tracks statistically unusual (keyword, location) narratives
with change-point detection, and serves a faceted search API.
"""

__version__ = "0.1.0"
