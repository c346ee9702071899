"""Text analytics: tokenization, phrase matching, keyword and entity
tagging, relevance scoring, count extraction, and summaries."""

from mediawatch.text.counts import CasualtyCount, extract_counts
from mediawatch.text.entities import EntityMention, tag_entities
from mediawatch.text.lexicon import (
    KeywordMention,
    Lexicon,
    LexiconEntry,
    load_blacklist,
    tag_keywords,
)
from mediawatch.text.matcher import PhraseMatch, PhraseMatcher
from mediawatch.text.relevance import (
    RelevanceModel,
    TrainingError,
    featurize,
    featurize_text,
    route,
    score_relevance,
    score_text,
    train_relevance,
)
from mediawatch.text.summarize import load_stopwords, split_sentences, summarize
from mediawatch.text.tokenize import Token, lower_tokens, tokenize

__all__ = [
    "CasualtyCount",
    "EntityMention",
    "KeywordMention",
    "Lexicon",
    "LexiconEntry",
    "PhraseMatch",
    "PhraseMatcher",
    "RelevanceModel",
    "Token",
    "TrainingError",
    "extract_counts",
    "featurize",
    "featurize_text",
    "load_blacklist",
    "load_stopwords",
    "lower_tokens",
    "route",
    "score_relevance",
    "score_text",
    "split_sentences",
    "summarize",
    "tag_entities",
    "tag_keywords",
    "tokenize",
    "train_relevance",
]
