"""LDA by collapsed Gibbs sampling, with sentences as the LDA documents."""

from __future__ import annotations

import json
import logging
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Document, Sentence

log = logging.getLogger(__name__)

DEFAULT_K = 10
DEFAULT_ETA = 0.01
DEFAULT_ITERATIONS = 500
DEFAULT_FOLD_IN = 50


def default_alpha(K: int) -> float:
    return 50.0 / K


class TopicError(ValueError):
    pass


@dataclass(frozen=True)
class TopicDistribution:
    probs: tuple[float, ...]

    @property
    def K(self) -> int:
        return len(self.probs)


class LdaModel:
    def __init__(self, topic_word, alpha: float, eta: float, vocab: Mapping[str, int]):
        topic_word = np.array(topic_word, dtype=float)
        if topic_word.ndim != 2 or topic_word.shape[0] < 2:
            raise TopicError("topic_word must be a K x V matrix with K >= 2")
        if topic_word.shape[1] != len(vocab):
            raise TopicError("vocabulary size does not match topic_word columns")
        if not np.allclose(topic_word.sum(axis=1), 1.0, atol=1e-9, rtol=0):
            raise TopicError("topic_word rows must sum to 1")
        topic_word.setflags(write=False)
        self.topic_word = topic_word
        self.alpha = float(alpha)
        self.eta = float(eta)
        self.vocab = dict(vocab)

    @property
    def K(self) -> int:
        return self.topic_word.shape[0]

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "alpha": self.alpha,
            "eta": self.eta,
            "vocab": sorted(self.vocab, key=self.vocab.__getitem__),
            "topic_word": [[float(x) for x in row] for row in self.topic_word],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LdaModel":
        vocab = {w: i for i, w in enumerate(d["vocab"])}
        model = cls(d["topic_word"], d["alpha"], d["eta"], vocab)
        if model.K != d["K"]:
            raise TopicError("K does not match topic_word rows")
        return model

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "LdaModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _sample(weights: list[float], u: float) -> int:
    cum = list(accumulate(weights))
    k = bisect_right(cum, u * cum[-1])
    return min(k, len(weights) - 1)


def gibbs_assignments(docs: Sequence[Sequence[int]], V: int, K: int, alpha: float, eta: float,
                      iterations: int, seed: int):
    """Run collapsed Gibbs sampling; returns (assignments, doc_topic, topic_word) counts."""
    rng = np.random.default_rng(seed)
    n_dk = [[0] * K for _ in docs]
    n_kw = [[0] * V for _ in range(K)]
    n_k = [0] * K
    z = []
    for d, doc in enumerate(docs):
        zd = rng.integers(0, K, size=len(doc)).tolist()
        for w, k in zip(doc, zd):
            n_dk[d][k] += 1
            n_kw[k][w] += 1
            n_k[k] += 1
        z.append(zd)
    v_eta = V * eta
    topics = range(K)
    for _ in range(iterations):
        for d, doc in enumerate(docs):
            if not doc:
                continue
            zd, nd = z[d], n_dk[d]
            uniforms = rng.random(len(doc)).tolist()
            for i, w in enumerate(doc):
                k = zd[i]
                nd[k] -= 1
                n_kw[k][w] -= 1
                n_k[k] -= 1
                weights = [(nd[t] + alpha) * (n_kw[t][w] + eta) / (n_k[t] + v_eta) for t in topics]
                k = _sample(weights, uniforms[i])
                zd[i] = k
                nd[k] += 1
                n_kw[k][w] += 1
                n_k[k] += 1
    return z, np.array(n_dk, dtype=float).reshape(len(docs), K), np.array(n_kw, dtype=float)


def build_vocab(sentences: Sequence[Sentence]) -> dict[str, int]:
    vocab: dict[str, int] = {}
    for s in sentences:
        for t in s.tokens:
            vocab.setdefault(t.surface, len(vocab))
    return vocab


def fit_lda(corpus: Sequence[Document], K: int = DEFAULT_K, alpha: float | None = None,
            eta: float = DEFAULT_ETA, iterations: int = DEFAULT_ITERATIONS, seed: int = 0) -> LdaModel:
    """Fit LDA treating every sentence of every document as one LDA document."""
    if K < 2:
        raise TopicError("K must be at least 2")
    if iterations < 1:
        raise TopicError("iterations must be at least 1")
    alpha = default_alpha(K) if alpha is None else alpha
    sentences = [s for doc in corpus for s in doc.sentences]
    vocab = build_vocab(sentences)
    if not vocab:
        raise TopicError("corpus vocabulary is empty")
    docs = [[vocab[t.surface] for t in s.tokens] for s in sentences]
    _, _, n_kw = gibbs_assignments(docs, len(vocab), K, alpha, eta, iterations, seed)
    smoothed = n_kw + eta
    topic_word = smoothed / smoothed.sum(axis=1, keepdims=True)
    log.info("fit LDA: K=%d, V=%d, %d sentences, %d iterations", K, len(vocab), len(docs), iterations)
    return LdaModel(topic_word, alpha, eta, vocab)


def infer_sentence_topics(model: LdaModel, sentence: Sentence, iterations: int = DEFAULT_FOLD_IN,
                          seed: int = 0) -> TopicDistribution:
    """Fold-in Gibbs sampling against the fixed topic-word matrix.

    The returned distribution averages the smoothed topic proportions over
    every sweep after the first half of the budget.
    """
    K = model.K
    words = [model.vocab[t.surface] for t in sentence.tokens if t.surface in model.vocab]
    if not words:
        return TopicDistribution(tuple([1.0 / K] * K))
    rng = np.random.default_rng(seed)
    phi = model.topic_word
    cols = [phi[:, w].tolist() for w in words]
    z = rng.integers(0, K, size=len(words)).tolist()
    counts = [0] * K
    for k in z:
        counts[k] += 1
    iterations = max(1, iterations)
    burn = iterations // 2
    acc = np.zeros(K)
    kept = 0
    for it in range(iterations):
        uniforms = rng.random(len(words)).tolist()
        for i, col in enumerate(cols):
            counts[z[i]] -= 1
            k = _sample([(counts[t] + model.alpha) * col[t] for t in range(K)], uniforms[i])
            z[i] = k
            counts[k] += 1
        if it >= burn:
            acc += np.array(counts, dtype=float) + model.alpha
            kept += 1
    probs = acc / acc.sum()
    return TopicDistribution(tuple(float(p) for p in probs))


def topic_similarity(p: TopicDistribution, q: TopicDistribution) -> float:
    """Inner product of two topic mixtures."""
    if p.K != q.K:
        raise TopicError(f"topic count mismatch: {p.K} vs {q.K}")
    return float(sum(a * b for a, b in zip(p.probs, q.probs)))
