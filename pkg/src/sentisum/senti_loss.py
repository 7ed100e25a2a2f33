"""Sentiment-weighted sequence NLL and a bigram toy LM to train with it.

With every weight equal to 1 the loss is the ordinary teacher-forced
negative log-likelihood of the summary tokens.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .attribution import integrated_gradients, token_weights
from .corpus import Sentence
from .embeddings import EmbeddingTable, embed_all
from .sentiment import sentence_probability


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def weighted_nll(log_probs, targets: Sequence[int], lambdas: Sequence[float]) -> float:
    """-sum_t lambda_t * log P(target_t) over per-position log-distributions."""
    log_probs = np.asarray(log_probs, dtype=float)
    if not (len(log_probs) == len(targets) == len(lambdas)):
        raise ValueError(f"length mismatch: {len(log_probs)} steps, {len(targets)} targets, "
                         f"{len(lambdas)} weights")
    if any(lam < 0 for lam in lambdas):
        raise ValueError("token weights must be non-negative")
    total = 0.0
    for t, (tgt, lam) in enumerate(zip(targets, lambdas)):
        total -= lam * log_probs[t, tgt]
    return float(total)


def nll(log_probs, targets: Sequence[int]) -> float:
    return weighted_nll(log_probs, targets, [1.0] * len(targets))


class ToyLM:
    """Bigram LM: row ``V`` of the ``(V + 1, V)`` logits table is the start context."""

    def __init__(self, logits):
        logits = np.array(logits, dtype=float)
        if logits.ndim != 2 or logits.shape[0] != logits.shape[1] + 1:
            raise ValueError("logits must have shape (V + 1, V)")
        if not np.all(np.isfinite(logits)):
            raise ValueError("logits must be finite")
        logits.setflags(write=False)
        self.logits = logits

    @classmethod
    def zeros(cls, V: int) -> "ToyLM":
        return cls(np.zeros((V + 1, V)))

    @property
    def V(self) -> int:
        return self.logits.shape[1]

    @property
    def start(self) -> int:
        return self.V

    def contexts(self, tokens: Sequence[int]) -> list[int]:
        return [self.start] + list(tokens[:-1])


def toy_forward(model: ToyLM, prefix: Sequence[int]) -> np.ndarray:
    """Log-distribution for every position of ``prefix`` given the tokens before it."""
    for tok in prefix:
        if not 0 <= tok < model.V:
            raise ValueError(f"token {tok} outside vocabulary of size {model.V}")
    if not len(prefix):
        return np.zeros((0, model.V))
    return log_softmax(model.logits[model.contexts(prefix)])


def loss_and_grad(model: ToyLM, sequences, lambdas_per_seq) -> tuple[float, np.ndarray]:
    """Total weighted NLL over sequences and its gradient w.r.t. the logits table.

    Each position contributes lambda_t * (softmax - onehot(target)) to the row
    of its context.
    """
    grad = np.zeros_like(model.logits)
    total = 0.0
    for seq, lams in zip(sequences, lambdas_per_seq, strict=True):
        if not len(seq):
            continue
        logp = toy_forward(model, seq)
        total += weighted_nll(logp, seq, lams)
        probs = np.exp(logp)
        probs[np.arange(len(seq)), seq] -= 1.0
        np.add.at(grad, model.contexts(seq), np.asarray(lams, dtype=float)[:, None] * probs)
    return total, grad


def train_toy(model: ToyLM, sequences, lambdas_per_seq, lr: float = 0.5, epochs: int = 100,
              history: Optional[list] = None) -> ToyLM:
    """Full-batch gradient descent on the summed weighted NLL."""
    if epochs < 0:
        raise ValueError("epochs must be non-negative")
    logits = np.array(model.logits)
    for _ in range(epochs):
        loss, grad = loss_and_grad(ToyLM(logits), sequences, lambdas_per_seq)
        if history is not None:
            history.append(loss)
        logits = logits - lr * grad
    out = ToyLM(logits)
    if history is not None:
        history.append(loss_and_grad(out, sequences, lambdas_per_seq)[0])
    return out


def position_nll(model: ToyLM, sequences, t: int) -> float:
    """Unweighted NLL at position ``t`` summed over sequences long enough to have it."""
    total = 0.0
    for seq in sequences:
        if len(seq) > t:
            total -= toy_forward(model, seq)[t, seq[t]]
    return float(total)


def summary_token_weights(sentences: Sequence[Sentence], model, table: EmbeddingTable, beta: float = 1.0,
                          m: int = 512, mode: str = "positive") -> list[float]:
    """Per-token lambda for a reference summary, flattened in token order."""
    out: list[float] = []
    for s in sentences:
        if not s.tokens:
            continue
        attr = integrated_gradients(model, table, s, m)
        p = sentence_probability(model, embed_all(table, s.tokens), mode)
        out.extend(token_weights(attr, p, beta).lambdas)
    return out
