"""Relevance scoring: hashed n-gram features, linear hinge-loss model,
logistic confidence, and threshold routing.

The feature space is word 1-2 grams plus character 3-5 grams of the working
text, hashed into a fixed power-of-two dimension with the published feature
seed, so a trained model is a portable artifact: the same text featurizes
identically on any platform.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from mediawatch.hashing import FEATURE_SEED, hash64
from mediawatch.text.tokenize import lower_tokens

MODEL_FORMAT = "mediawatch-relevance"
MODEL_VERSION = 1

DEFAULT_DIM = 1 << 20


class TrainingError(ValueError):
    pass


@dataclass
class RelevanceModel:
    dim: int
    weights: np.ndarray
    bias: float
    t_low: float = 0.2
    t_high: float = 0.8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.dim & (self.dim - 1) or self.dim <= 0:
            raise ValueError(f"dim must be a power of two, got {self.dim}")
        if not (0.0 <= self.t_low < self.t_high <= 1.0):
            raise ValueError(f"bad thresholds ({self.t_low}, {self.t_high})")
        if not np.all(np.isfinite(self.weights)):
            raise ValueError("model weights must be finite")

    @classmethod
    def zeros(cls, dim: int = DEFAULT_DIM, **kw) -> "RelevanceModel":
        return cls(dim=dim, weights=np.zeros(dim), bias=0.0, **kw)

    def save(self, path: str | Path) -> None:
        nz = np.nonzero(self.weights)[0]
        record = {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "dim": self.dim,
            "seed": self.seed,
            "bias": self.bias,
            "t_low": self.t_low,
            "t_high": self.t_high,
            "weights": {int(i): float(self.weights[i]) for i in nz},
        }
        Path(path).write_text(json.dumps(record), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "RelevanceModel":
        record = json.loads(Path(path).read_text(encoding="utf-8"))
        if record.get("format") != MODEL_FORMAT:
            raise ValueError(f"not a relevance model file: {path}")
        if record.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported model version {record.get('version')}")
        weights = np.zeros(record["dim"])
        for idx, val in record["weights"].items():
            weights[int(idx)] = val
        return cls(
            dim=record["dim"],
            weights=weights,
            bias=record["bias"],
            t_low=record["t_low"],
            t_high=record["t_high"],
            seed=record.get("seed", 0),
        )


def featurize_text(text: str, dim: int = DEFAULT_DIM) -> dict[int, int]:
    """Hashed counts of word 1-2 grams and char 3-5 grams of *text*.

    Feature strings are namespaced ("w|" / "c|") before hashing so word and
    character grams never alias by construction. Deterministic across runs
    and platforms.
    """
    grams: Counter[str] = Counter()
    words = lower_tokens(text)
    for w in words:
        grams["w|" + w] += 1
    for a, b in zip(words, words[1:]):
        grams["w|" + a + " " + b] += 1
    chars = text.lower()
    for n in (3, 4, 5):
        if len(chars) >= n:
            for i in range(len(chars) - n + 1):
                grams["c|" + chars[i : i + n]] += 1
    mask = dim - 1
    vec: dict[int, int] = {}
    for gram, count in grams.items():
        idx = hash64(gram, FEATURE_SEED) & mask
        vec[idx] = vec.get(idx, 0) + count
    return vec


def featurize(doc, model: RelevanceModel) -> dict[int, int]:
    return featurize_text(doc.working_text(), model.dim)


def _margin(weights: np.ndarray, bias: float, feats: dict[int, int]) -> float:
    if not feats:
        return bias
    idx = np.fromiter(feats.keys(), dtype=np.int64, count=len(feats))
    val = np.fromiter(feats.values(), dtype=np.float64, count=len(feats))
    return float(weights[idx] @ val) + bias


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def train_relevance(
    labeled,
    dim: int = DEFAULT_DIM,
    epochs: int = 5,
    reg: float = 1e-4,
    seed: int = 13,
    t_low: float = 0.2,
    t_high: float = 0.8,
) -> RelevanceModel:
    """Train the linear margin classifier by SGD on regularized hinge loss.

    labeled is a sequence of (document-or-text, bool) pairs. Both labels must
    be present. A fixed seed gives a bit-identical model on every run: the
    only randomness is the epoch shuffle, driven by random.Random(seed).
    """
    if epochs < 1:
        raise TrainingError("epochs must be >= 1")
    feats = []
    ys = []
    for item, label in labeled:
        text = item if isinstance(item, str) else item.working_text()
        feats.append(featurize_text(text, dim))
        ys.append(1.0 if label else -1.0)
    if not feats:
        raise TrainingError("empty training set")
    if len(set(ys)) < 2:
        raise TrainingError("training set must contain both classes")

    rng = random.Random(seed)
    weights = np.zeros(dim)
    bias = 0.0
    scale = 1.0  # lazy L2 shrinkage: true weights are scale * weights
    order = list(range(len(feats)))
    t = 0
    for _ in range(epochs):
        rng.shuffle(order)
        for i in order:
            t += 1
            eta = 1.0 / (reg * (t + 1))
            scale *= 1.0 - eta * reg
            x, y = feats[i], ys[i]
            # margin against the true (scaled) weights
            m = y * (scale * _margin(weights, 0.0, x) + bias)
            if m < 1.0:
                upd = eta * y / scale
                for idx, c in x.items():
                    weights[idx] += upd * c
                bias += eta * y

    weights *= scale
    return RelevanceModel(
        dim=dim, weights=weights, bias=bias, t_low=t_low, t_high=t_high, seed=seed
    )


def score_relevance(doc, model: RelevanceModel) -> float:
    """Logistic confidence in (0,1); monotone in the linear margin."""
    feats = featurize(doc, model)
    return _sigmoid(_margin(model.weights, model.bias, feats))


def score_text(text: str, model: RelevanceModel) -> float:
    feats = featurize_text(text, model.dim)
    return _sigmoid(_margin(model.weights, model.bias, feats))


def route(score: float, t_low: float, t_high: float) -> str:
    """Map a relevance score to a routing status.

    published at or above t_high, suppressed below t_low, triage between.
    """
    if not (0.0 <= t_low < t_high <= 1.0):
        raise ValueError(f"bad thresholds ({t_low}, {t_high})")
    if score >= t_high:
        return "published"
    if score < t_low:
        return "suppressed"
    return "triage"
