"""Mean-pooled logistic sentiment classifier with analytic input gradients."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .corpus import LabeledExample, tokenize
from .embeddings import EmbeddingTable, embed_all

log = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


def logistic(z):
    """Numerically stable logistic function (scalar or array)."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.5
    epochs: int = 300
    seed: int = 0
    l2: float = 0.0

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 0:
            raise ValueError("epochs must be non-negative")
        if self.l2 < 0:
            raise ValueError("l2 must be non-negative")


class SentimentModel:
    """F(x) = logistic(weight . mean(x) + bias) over token embeddings."""

    def __init__(self, weight, bias: float = 0.0, table_fingerprint: Optional[str] = None):
        weight = np.array(weight, dtype=float)
        if weight.ndim != 1 or not np.all(np.isfinite(weight)) or not np.isfinite(bias):
            raise ValueError("model parameters must be a finite vector and scalar")
        weight.setflags(write=False)
        self.weight = weight
        self.bias = float(bias)
        self.table_fingerprint = table_fingerprint

    @property
    def dimension(self) -> int:
        return self.weight.shape[0]

    def _check(self, token_vectors) -> np.ndarray:
        x = np.asarray(token_vectors, dtype=float)
        if x.ndim != 2 or x.shape[0] == 0:
            raise ValueError("need a non-empty (n, E) array of token vectors")
        if x.shape[1] != self.dimension:
            raise ValueError(f"token dimension {x.shape[1]} != model dimension {self.dimension}")
        return x

    def forward(self, token_vectors) -> float:
        x = self._check(token_vectors)
        p = logistic(float(self.weight @ x.mean(axis=0)) + self.bias)
        # keep strictly inside (0, 1) once the logistic saturates
        return min(max(p, _EPS), 1.0 - _EPS)

    def input_gradient(self, token_vectors) -> np.ndarray:
        """dF/dx_i for every position; identical rows p(1-p) w / n."""
        x = self._check(token_vectors)
        n = x.shape[0]
        p = self.forward(x)
        return np.tile(p * (1.0 - p) * self.weight / n, (n, 1))

    def path_gradient_mean(self, token_vectors, alphas) -> np.ndarray:
        """Mean of ``input_gradient(alpha * x)`` over ``alphas`` (zero baseline), vectorized."""
        x = self._check(token_vectors)
        n = x.shape[0]
        z = float(self.weight @ x.mean(axis=0))
        p = np.clip(logistic(np.asarray(alphas, dtype=float) * z + self.bias), _EPS, 1.0 - _EPS)
        return np.tile(float(np.mean(p * (1.0 - p))) * self.weight / n, (n, 1))

    def to_dict(self) -> dict:
        d = {"dimension": self.dimension, "weight": [float(w) for w in self.weight], "bias": self.bias}
        if self.table_fingerprint is not None:
            d["table_fingerprint"] = self.table_fingerprint
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SentimentModel":
        if len(d["weight"]) != d["dimension"]:
            raise ValueError("weight length does not match dimension")
        return cls(d["weight"], d["bias"], d.get("table_fingerprint"))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "SentimentModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def check_table(self, table: EmbeddingTable) -> None:
        if table.dimension != self.dimension:
            raise ValueError(f"model dimension {self.dimension} != table dimension {table.dimension}")
        if self.table_fingerprint is not None and self.table_fingerprint != table.fingerprint():
            log.warning("sentiment model was trained against a different embedding table")


def sentence_probability(model: SentimentModel, token_vectors, mode: str = "positive") -> float:
    """p(s) for a sentence: positive-class probability, or intensity ``|2p - 1|``."""
    p = model.forward(token_vectors)
    if mode == "positive":
        return p
    if mode == "intensity":
        return abs(2.0 * p - 1.0)
    raise ValueError(f"unknown sentiment mode {mode!r}")


def featurize(examples: Sequence[LabeledExample], table: EmbeddingTable):
    feats, labels = [], []
    for ex in examples:
        tokens = tokenize(ex.text)
        if not tokens:
            log.warning("skipping labeled example with no tokens: %r", ex.text)
            continue
        feats.append(embed_all(table, tokens).mean(axis=0))
        labels.append(ex.label)
    return np.array(feats).reshape(-1, table.dimension), np.array(labels, dtype=float)


def bce_loss(weight, bias, X, y, l2=0.0) -> float:
    p = np.clip(logistic(X @ weight + bias), _EPS, 1.0 - _EPS)
    loss = -np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))
    return float(loss + 0.5 * l2 * np.dot(weight, weight))


def train(examples: Sequence[LabeledExample], table: EmbeddingTable, config: TrainConfig = TrainConfig(),
          history: Optional[list] = None) -> SentimentModel:
    """Full-batch gradient descent on binary cross-entropy from zero initialization.

    If ``history`` is given, the loss before each epoch and after the last one
    is appended to it.
    """
    X, y = featurize(examples, table)
    if len(set(y.tolist())) < 2:
        raise ValueError("training data must contain both classes")
    # zero init on a convex objective; config.seed only matters for reproducibility records
    w = np.zeros(table.dimension)
    b = 0.0
    n = len(y)
    for _ in range(config.epochs):
        if history is not None:
            history.append(bce_loss(w, b, X, y, config.l2))
        resid = logistic(X @ w + b) - y
        grad_w = X.T @ resid / n + config.l2 * w
        grad_b = float(resid.mean())
        w = w - config.learning_rate * grad_w
        b = b - config.learning_rate * grad_b
    if history is not None:
        history.append(bce_loss(w, b, X, y, config.l2))
    return SentimentModel(w, b, table.fingerprint())


def accuracy(model: SentimentModel, examples: Sequence[LabeledExample], table: EmbeddingTable) -> float:
    X, y = featurize(examples, table)
    pred = (logistic(X @ model.weight + model.bias) >= 0.5).astype(float)
    return float(np.mean(pred == y))
