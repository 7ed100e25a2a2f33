"""Recall-only ROUGE-N and ROUGE-L."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .corpus import Token, tokenize


@dataclass(frozen=True)
class RougeScore:
    rouge1: float
    rouge2: float
    rougeL: float

    def as_tuple(self):
        return (self.rouge1, self.rouge2, self.rougeL)


def _surfaces(tokens) -> list[str]:
    return [t.surface if isinstance(t, Token) else t for t in tokens]


def ngram_counts(tokens, n: int) -> Counter:
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = _surfaces(tokens)
    return Counter(tuple(seq[i:i + n]) for i in range(len(seq) - n + 1))


def rouge_n_counts(system, reference, n: int) -> tuple[int, int]:
    """(clipped overlap, reference n-gram total)."""
    sys_counts = ngram_counts(system, n)
    ref_counts = ngram_counts(reference, n)
    overlap = sum(min(c, sys_counts[g]) for g, c in ref_counts.items())
    return overlap, sum(ref_counts.values())


def rouge_n(system, reference, n: int) -> float:
    """Clipped n-gram recall; 0 when the reference has no n-grams.

    Accepts sequences of :class:`Token` or plain strings.
    """
    overlap, total = rouge_n_counts(system, reference, n)
    return overlap / total if total else 0.0


def lcs_length(x, y) -> int:
    x, y = _surfaces(x), _surfaces(y)
    if not x or not y:
        return 0
    prev = [0] * (len(y) + 1)
    for xi in x:
        cur = [0]
        for j, yj in enumerate(y):
            cur.append(prev[j] + 1 if xi == yj else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_l(system, reference) -> float:
    ref = _surfaces(reference)
    if not ref:
        return 0.0
    return lcs_length(system, ref) / len(ref)


def score(system: Sequence, reference: Sequence) -> RougeScore:
    return RougeScore(rouge_n(system, reference, 1), rouge_n(system, reference, 2), rouge_l(system, reference))


def score_text(system: str, reference: str) -> RougeScore:
    """Score two raw strings after running both through the corpus tokenizer."""
    return score(tokenize(system), tokenize(reference))
