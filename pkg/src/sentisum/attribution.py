"""Integrated Gradients token attribution, cause sets and token weights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .corpus import Sentence, Token
from .embeddings import EmbeddingTable, embed_all
from .sentiment import logistic

DEFAULT_STEPS = 512
DEFAULT_CAUSE_SIZE = 3

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Attribution:
    per_token: tuple[float, ...]
    steps_used: int

    def __len__(self):
        return len(self.per_token)


@dataclass(frozen=True)
class CauseSet:
    tokens: tuple[Token, ...]
    k: int

    @property
    def positions(self) -> list[int]:
        return [t.index for t in self.tokens]


@dataclass(frozen=True)
class TokenWeight:
    lambdas: tuple[float, ...]
    beta: float


def integrated_gradients_vectors(model, x, m: int = DEFAULT_STEPS, baseline=None) -> np.ndarray:
    """Per-token IG scores for an ``(n, E)`` input.

    ``model`` needs ``input_gradient(vectors) -> (n, E)``. The path integral
    is a right-endpoint Riemann sum at alpha_j = j/m, j = 1..m, and the
    per-dimension attributions are summed over the embedding axis.
    """
    if m < 1:
        raise ValueError("number of IG steps must be >= 1")
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("cannot attribute an empty sentence")
    alphas = np.arange(1, m + 1) / m
    if baseline is None and hasattr(model, "path_gradient_mean"):
        return np.sum(x * model.path_gradient_mean(x, alphas), axis=1)
    x0 = np.zeros_like(x) if baseline is None else np.asarray(baseline, dtype=float)
    diff = x - x0
    total = np.zeros_like(x)
    for alpha in alphas:
        total += model.input_gradient(x0 + alpha * diff)
    return np.sum(diff * (total / m), axis=1)


def integrated_gradients(model, table: EmbeddingTable, sentence: Sentence, m: int = DEFAULT_STEPS) -> Attribution:
    if not sentence.tokens:
        raise ValueError("cannot attribute an empty sentence")
    phi = integrated_gradients_vectors(model, embed_all(table, sentence.tokens), m)
    return Attribution(tuple(float(v) for v in phi), m)


def cause_set(sentence: Sentence, attribution: Attribution, k: int = DEFAULT_CAUSE_SIZE) -> CauseSet:
    """Top-``k`` tokens by attribution, ties to the earlier position."""
    if len(attribution) != len(sentence.tokens):
        raise ValueError("attribution is not aligned with the sentence")
    order = sorted(range(len(sentence.tokens)), key=lambda i: (-attribution.per_token[i], i))
    return CauseSet(tuple(sentence.tokens[i] for i in order[:k]), k)


def normalize_attribution(phi) -> np.ndarray:
    """Max-abs scaling into [-1, 1]; all-zero stays all-zero."""
    phi = np.asarray(phi, dtype=float)
    scale = np.max(np.abs(phi)) if phi.size else 0.0
    if scale == 0.0:
        return np.zeros_like(phi)
    return phi / scale


def token_weights(attribution: Attribution, sentence_p: float, beta: float = 1.0) -> TokenWeight:
    """lambda_i = logistic(phi_norm_i + beta * p(s))."""
    if not 0.0 <= sentence_p <= 1.0:
        raise ValueError(f"sentence probability must lie in [0, 1], got {sentence_p}")
    z = normalize_attribution(attribution.per_token) + beta * sentence_p
    lam = np.clip(np.atleast_1d(logistic(z)), _EPS, 1.0 - _EPS)
    return TokenWeight(tuple(float(v) for v in lam), beta)


def has_signal(attribution: Optional[Attribution]) -> bool:
    """False when every attribution is exactly zero (F constant along the path)."""
    return attribution is not None and any(v != 0.0 for v in attribution.per_token)
