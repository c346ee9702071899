from mediawatch.ingest.feeds import FeedConfig, FeedFetcher, FetchError, load_feed_configs
from mediawatch.ingest.langdetect import LanguageDetector, detect_language
from mediawatch.ingest.models import Document, RawArticle
from mediawatch.ingest.normalize import normalize, normalize_text
from mediawatch.ingest.translate import (
    RemoteTranslationClient,
    StubTranslationClient,
    TranslationClient,
    TranslationError,
    translate_to_working,
)

__all__ = [
    "Document",
    "FeedConfig",
    "FeedFetcher",
    "FetchError",
    "LanguageDetector",
    "RawArticle",
    "RemoteTranslationClient",
    "StubTranslationClient",
    "TranslationClient",
    "TranslationError",
    "detect_language",
    "load_feed_configs",
    "normalize",
    "normalize_text",
    "translate_to_working",
]
