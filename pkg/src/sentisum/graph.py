"""Sentence graph (lexical, emotional, topical, composite) and damped ranking.

The default update implemented by :func:`rank` is, for every node i::

    p_i = (1 - d) + d * sum_{j in N(i)} Omega_ij * p_j / sum_{k in N(j)} w_jk

with ``N(i) = {j != i : Omega_ij > 0}``. The numerator uses the composite
weight while the denominator uses only the lexical one. Rows of ``w`` sum
to 1, so with ``a = b = 0`` every score is exactly 1 and the summary is the
lead-L sentences; once ``a``/``b`` add mass the map can expand and the
iteration may stop at ``max_iter`` unconverged.

``denominator="composite"`` (divide by ``Omega_jk``) together with
``edge_direction="incoming"`` (numerator ``Omega_ji``, classic TextRank
in-edges) gives a column-stochastic transition matrix that always contracts.
With ``a = b = 0`` the two denominators coincide.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .attribution import (DEFAULT_CAUSE_SIZE, DEFAULT_STEPS, Attribution, CauseSet, cause_set,
                          has_signal, integrated_gradients)
from .corpus import Document, Sentence
from .embeddings import EmbeddingTable, cosine, mean_embedding
from .topics import DEFAULT_FOLD_IN, LdaModel, infer_sentence_topics, topic_similarity

_LEXICAL = ("cosine", "jaccard")
_DENOMINATORS = ("lexical", "composite")
_DIRECTIONS = ("literal", "incoming")


@dataclass(frozen=True)
class RankConfig:
    a: float = 0.1
    b: float = 0.35
    d: float = 0.85
    tol: float = 1e-6
    max_iter: int = 200
    L: Optional[int] = None
    k: int = DEFAULT_CAUSE_SIZE
    m: int = DEFAULT_STEPS
    lexical: str = "cosine"
    denominator: str = "lexical"
    edge_direction: str = "literal"
    fold_in_iterations: int = DEFAULT_FOLD_IN
    seed: int = 0

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be non-negative")
        if not 0.0 < self.d < 1.0:
            raise ValueError("damping d must lie in (0, 1)")
        if not self.tol > 0 or self.max_iter < 1:
            raise ValueError("tol must be positive and max_iter >= 1")
        if self.L is not None and self.L < 1:
            raise ValueError("L must be >= 1")
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be >= 1")
        if self.lexical not in _LEXICAL:
            raise ValueError(f"lexical must be one of {_LEXICAL}")
        if self.denominator not in _DENOMINATORS:
            raise ValueError(f"denominator must be one of {_DENOMINATORS}")
        if self.edge_direction not in _DIRECTIONS:
            raise ValueError(f"edge_direction must be one of {_DIRECTIONS}")

    def summary_length(self, n: int) -> int:
        """Configured L, or ceil(0.2 n) when unset."""
        return self.L if self.L is not None else max(1, math.ceil(0.2 * n))

    def with_weights(self, a: float, b: float) -> "RankConfig":
        return replace(self, a=a, b=b)


@dataclass(frozen=True)
class SentenceGraph:
    lexical: np.ndarray
    emotional: np.ndarray
    topical: np.ndarray
    composite: np.ndarray
    cause_sets: tuple = field(default=(), compare=False)
    attributions: tuple = field(default=(), compare=False)
    topic_mixtures: tuple = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.lexical.shape[0]

    def recombine(self, a: float, b: float) -> "SentenceGraph":
        """Same w, Psi, Theta with a new composite for weights (a, b)."""
        return replace(self, composite=compose(self.lexical, self.emotional, self.topical, a, b))


@dataclass(frozen=True)
class RankResult:
    scores: tuple[float, ...]
    iterations: int
    converged: bool
    selected: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"scores": list(self.scores), "iterations": self.iterations,
                "converged": self.converged, "selected": list(self.selected)}


def raw_similarity(s_i: Sentence, s_j: Sentence, kind: str = "cosine") -> float:
    """Term-frequency cosine (or set Jaccard) between two sentences."""
    if not s_i.tokens or not s_j.tokens:
        return 0.0
    if kind == "jaccard":
        a, b = set(s_i.surfaces), set(s_j.surfaces)
        return len(a & b) / len(a | b)
    if kind != "cosine":
        raise ValueError(f"unknown lexical similarity {kind!r}")
    ci, cj = Counter(s_i.surfaces), Counter(s_j.surfaces)
    dot = sum(c * cj[w] for w, c in ci.items())
    if dot == 0:
        return 0.0
    ni = math.sqrt(sum(c * c for c in ci.values()))
    nj = math.sqrt(sum(c * c for c in cj.values()))
    return min(1.0, dot / (ni * nj))


def lexical_matrix(sentences: Sequence[Sentence], kind: str = "cosine") -> np.ndarray:
    n = len(sentences)
    raw = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            raw[i, j] = raw[j, i] = raw_similarity(sentences[i], sentences[j], kind)
    return raw


def normalize_lexical(raw) -> np.ndarray:
    """Divide each row by its off-diagonal sum; zero rows stay zero."""
    raw = np.array(raw, dtype=float)
    np.fill_diagonal(raw, 0.0)
    sums = raw.sum(axis=1, keepdims=True)
    out = np.zeros_like(raw)
    np.divide(raw, sums, out=out, where=sums != 0)
    return out


def compose(lexical, emotional, topical, a: float, b: float) -> np.ndarray:
    omega = lexical + a * emotional + b * topical
    np.fill_diagonal(omega, 0.0)
    return omega


def _cause_vector(table: EmbeddingTable, cs: CauseSet, attribution: Attribution) -> np.ndarray:
    # no attribution mass means no sentiment cause: contributes zero similarity
    if not has_signal(attribution):
        return np.zeros(table.dimension)
    return mean_embedding(table, cs.tokens)


def emotional_similarity(s_i: Sentence, s_j: Sentence, model, table: EmbeddingTable,
                         k: int = DEFAULT_CAUSE_SIZE, m: int = DEFAULT_STEPS) -> float:
    """Cosine between mean embeddings of the two sentences' cause sets."""
    vecs = []
    for s in (s_i, s_j):
        attr = integrated_gradients(model, table, s, m)
        vecs.append(_cause_vector(table, cause_set(s, attr, k), attr))
    return cosine(*vecs)


def sentence_causes(doc: Document, model, table: EmbeddingTable, k: int, m: int):
    attrs = tuple(integrated_gradients(model, table, s, m) for s in doc.sentences)
    causes = tuple(cause_set(s, a, k) for s, a in zip(doc.sentences, attrs))
    return attrs, causes


def emotional_matrix(doc: Document, model, table: EmbeddingTable, k: int, m: int):
    attrs, causes = sentence_causes(doc, model, table, k, m)
    vecs = [_cause_vector(table, c, a) for c, a in zip(causes, attrs)]
    n = len(doc)
    psi = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            psi[i, j] = psi[j, i] = cosine(vecs[i], vecs[j])
    return psi, attrs, causes


def topical_matrix(doc: Document, lda: LdaModel, fold_in_iterations: int = DEFAULT_FOLD_IN, seed: int = 0):
    mixtures = tuple(infer_sentence_topics(lda, s, fold_in_iterations, seed) for s in doc.sentences)
    n = len(doc)
    theta = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            theta[i, j] = theta[j, i] = topic_similarity(mixtures[i], mixtures[j])
    return theta, mixtures


def build_graph(doc: Document, model, lda: Optional[LdaModel], table: Optional[EmbeddingTable],
                config: RankConfig) -> SentenceGraph:
    """Populate w, Psi, Theta and Omega = w + a Psi + b Theta.

    ``model``/``table`` may be None when ``a == 0`` and ``lda`` may be None
    when ``b == 0``; the corresponding matrix is then all zeros.
    """
    if doc is None or len(doc) == 0:
        raise ValueError("cannot build a graph for an empty document")
    n = len(doc)
    lexical = normalize_lexical(lexical_matrix(doc.sentences, config.lexical))
    psi, attrs, causes = np.zeros((n, n)), (), ()
    if model is not None and table is not None:
        psi, attrs, causes = emotional_matrix(doc, model, table, config.k, config.m)
    elif config.a != 0:
        raise ValueError("a sentiment model and embedding table are required when a > 0")
    theta, mixtures = np.zeros((n, n)), ()
    if lda is not None:
        theta, mixtures = topical_matrix(doc, lda, config.fold_in_iterations, config.seed)
    elif config.b != 0:
        raise ValueError("an LDA model is required when b > 0")
    return SentenceGraph(lexical, psi, theta, compose(lexical, psi, theta, config.a, config.b),
                         causes, attrs, mixtures)


def rank(graph: SentenceGraph, config: RankConfig) -> RankResult:
    """Damped fixed-point iteration from p = 1 until max |dp| < tol."""
    result, _ = rank_with_trace(graph, config)
    return result


def transition_matrix(graph: SentenceGraph, config: RankConfig) -> np.ndarray:
    """M with p_new = (1 - d) + d M p."""
    omega = graph.composite
    if config.edge_direction == "incoming":
        omega = omega.T
    mask = graph.composite > 0
    np.fill_diagonal(mask, False)
    denom_src = graph.lexical if config.denominator == "lexical" else graph.composite
    denom = np.where(mask, denom_src, 0.0).sum(axis=1)
    nbr = omega > 0
    np.fill_diagonal(nbr, False)
    M = np.zeros_like(omega)
    ok = denom != 0
    # zero-denominator neighbours contribute nothing
    M[:, ok] = np.where(nbr[:, ok], omega[:, ok], 0.0) / denom[ok]
    return M


def rank_with_trace(graph: SentenceGraph, config: RankConfig):
    """Like :func:`rank` but also returns the list of max |dp| per iteration."""
    n = graph.n
    M = transition_matrix(graph, config)
    d = config.d
    p = np.ones(n)
    deltas = []
    converged = False
    it = 0
    while it < config.max_iter:
        it += 1
        with np.errstate(over="ignore", invalid="ignore"):
            new = (1.0 - d) + d * (M @ p)
            delta = float(np.abs(new - p).max()) if n else 0.0
        deltas.append(delta)
        if not np.isfinite(delta):
            # overflowing iterate: keep the last finite scores, flagged unconverged
            break
        p = new
        if delta < config.tol:
            converged = True
            break
    L = config.summary_length(n)
    scores = tuple(float(x) for x in p)
    return RankResult(scores, it, converged, top_indices(scores, L)), deltas


def top_indices(scores: Sequence[float], L: int) -> tuple[int, ...]:
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return tuple(sorted(order[:L]))


def select_summary(doc: Document, result: RankResult, L: int) -> list[Sentence]:
    """Top-L sentences by score (ties to lower index), in document order."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return [doc.sentences[i] for i in top_indices(result.scores, L)]


def textrank(doc: Document, config: RankConfig) -> tuple[SentenceGraph, RankResult]:
    """Plain lexical TextRank; shares the lexical code with :func:`build_graph`."""
    lexical = normalize_lexical(lexical_matrix(doc.sentences, config.lexical))
    zeros = np.zeros_like(lexical)
    graph = SentenceGraph(lexical, zeros, zeros, compose(lexical, zeros, zeros, 0.0, 0.0))
    return graph, rank(graph, config)


def ecpe_textrank(doc: Document, model, lda, table, config: RankConfig) -> tuple[SentenceGraph, RankResult]:
    graph = build_graph(doc, model, lda, table, config)
    return graph, rank(graph, config)
