"""Stable 64-bit hashing shared by feature hashing and shingle sketching.

Python's builtin hash() is salted per process, so everything that must be
reproducible across runs and machines (feature indices, shingle sketches,
document ids) goes through blake2b with a fixed seed mixed in as the key.
Different subsystems use different published seeds so their hash families
are independent.
"""

import hashlib

# Published seeds. Changing either invalidates persisted models / sketches.
FEATURE_SEED = 0x6D77_FEA7  # relevance feature hashing
SHINGLE_SEED = 0x6D77_5819  # dedup shingle hashing

_MASK64 = (1 << 64) - 1


def hash64(data: str | bytes, seed: int) -> int:
    """Stable 64-bit hash of *data* under *seed*, identical on every platform."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    key = (seed & _MASK64).to_bytes(8, "little")
    return int.from_bytes(
        hashlib.blake2b(data, digest_size=8, key=key).digest(), "little"
    )


def content_hash128(text: str) -> str:
    """128-bit content hash as 32 hex chars; used for document ids."""
    return hashlib.blake2b(text.encode("utf-8"), digest_size=16).hexdigest()
