"""Deterministic synthetic fixtures: embeddings, labeled sentences, corpora.

Everything here is generated from a seed so tests and the CLI demo need no
downloads. Sentiment words carry their polarity on embedding axis 0 and
every other word has exactly 0 there, which makes the labeled set linearly
separable.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .corpus import write_jsonl
from .embeddings import EmbeddingTable

DIMENSION = 8

POSITIVE = ["great", "love", "excellent", "delicious", "friendly", "amazing", "perfect", "happy",
            "wonderful", "best"]
NEGATIVE = ["terrible", "awful", "rude", "cold", "hate", "worst", "bad", "slow", "dirty", "angry"]
TOPICS = {
    "food": ["pizza", "pasta", "soup", "dessert", "burger", "salad", "bread", "coffee"],
    "service": ["waiter", "staff", "manager", "service", "table", "reservation", "host", "server"],
    "price": ["price", "bill", "cost", "money", "expensive", "cheap", "discount", "tip"],
}
FUNCTION = ["the", "a", "was", "is", "and", "i", "we", "it", "very", "our", "this", "they", "so",
            "with", "at", "but", "too", "to", "of", "my"]

_TEMPLATES = {
    1: ["the {t1} was {s1} and the {t2} was {s2}", "we {s1} the {t1} so much",
        "our {t1} was {s1} with a {s2} {t2}", "i think the {t1} is the {s1}"],
    0: ["the {t1} was {s1} and the {t2} was {s2}", "we {s1} the {t1} too much",
        "our {t1} was {s1} with a {s2} {t2}", "i think the {t1} is the {s1}"],
    None: ["we went to the {t1} at eight", "they had a {t1} and a {t2}",
           "it is a {t1} with a {t2}", "the {t1} and the {t2} of this place"],
}


def embedding_table(seed: int = 0) -> EmbeddingTable:
    rng = np.random.default_rng(seed)
    entries = {}
    for words, sign in ((POSITIVE, 1.0), (NEGATIVE, -1.0)):
        for w in words:
            v = rng.normal(0.0, 0.15, DIMENSION)
            v[0] = sign * (1.0 + rng.uniform(0.0, 0.5))
            entries[w] = v
    for axis, words in enumerate(TOPICS.values(), start=1):
        for w in words:
            v = rng.normal(0.0, 0.15, DIMENSION)
            v[0] = 0.0
            v[axis] = 1.0 + rng.uniform(0.0, 0.5)
            entries[w] = v
    for w in FUNCTION:
        v = rng.normal(0.0, 0.1, DIMENSION)
        v[0] = 0.0
        entries[w] = v
    return EmbeddingTable(entries, DIMENSION)


def _sentence(rng, polarity, topic=None) -> tuple[str, str]:
    topic = topic or str(rng.choice(list(TOPICS)))
    other = str(rng.choice([t for t in TOPICS if t != topic]))
    template = str(rng.choice(_TEMPLATES[polarity]))
    pool = POSITIVE if polarity == 1 else NEGATIVE
    s1, s2 = (str(w) for w in rng.choice(pool, size=2, replace=False))
    t1 = str(rng.choice(TOPICS[topic]))
    t2 = str(rng.choice(TOPICS[topic] if rng.random() < 0.6 else TOPICS[other]))
    text = template.format(t1=t1, t2=t2, s1=s1, s2=s2)
    return text[0].upper() + text[1:] + ("!" if polarity is not None and rng.random() < 0.3 else "."), topic


def labeled_rows(n: int = 60, seed: int = 1) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(n):
        label = i % 2
        rows.append({"text": _sentence(rng, label)[0], "label": label})
    return rows


def corpus_rows(n_docs: int = 20, seed: int = 2) -> list[dict]:
    """Review-like documents; the reference summary keeps the opinionated sentences."""
    rng = np.random.default_rng(seed)
    rows = []
    for d in range(n_docs):
        n = int(rng.integers(5, 11))
        topic = str(rng.choice(list(TOPICS)))
        polarity = int(rng.integers(0, 2))
        sentences, salient = [], []
        for i in range(n):
            kind = rng.random()
            if kind < 0.35:
                text, _ = _sentence(rng, polarity, topic)
                salient.append(text)
            elif kind < 0.5:
                text, _ = _sentence(rng, 1 - polarity)
            else:
                text, _ = _sentence(rng, None, topic if rng.random() < 0.5 else None)
            sentences.append(text)
        if not salient:
            text, _ = _sentence(rng, polarity, topic)
            sentences.insert(int(rng.integers(0, n + 1)), text)
            salient.append(text)
        rows.append({"id": f"doc{d:02d}", "text": " ".join(sentences), "summary": " ".join(salient[:2])})
    return rows


def planted_topic_corpus(n_sentences: int = 200, length: int = 10, seed: int = 3,
                         concentration: float = 0.2):
    """Two topics over disjoint 10-word vocabularies.

    Returns ``(rows, words, topic_word)`` where ``topic_word`` is the true
    2 x 20 matrix over ``words``.
    """
    rng = np.random.default_rng(seed)
    words = [f"alpha{i}" for i in range(10)] + [f"omega{i}" for i in range(10)]
    phi = np.zeros((2, 20))
    phi[0, :10] = rng.dirichlet(np.full(10, 5.0))
    phi[1, 10:] = rng.dirichlet(np.full(10, 5.0))
    sentences = []
    for _ in range(n_sentences):
        mix = rng.dirichlet([concentration, concentration]) @ phi
        idx = rng.choice(20, size=length, p=mix / mix.sum())
        sentences.append(" ".join(words[i] for i in idx) + ".")
    rows = [{"id": f"planted{i:02d}", "text": " ".join(sentences[i:i + 20])}
            for i in range(0, n_sentences, 20)]
    return rows, words, phi


def write_fixtures(out_dir, n_docs: int = 20, seed: int = 0) -> dict[str, Path]:
    """Write embeddings.txt, labeled.jsonl, corpus.jsonl and planted.jsonl."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {name: out / fname for name, fname in (
        ("embeddings", "embeddings.txt"), ("labeled", "labeled.jsonl"),
        ("corpus", "corpus.jsonl"), ("planted", "planted.jsonl"))}
    embedding_table(seed).save(paths["embeddings"])
    write_jsonl(paths["labeled"], labeled_rows(seed=seed + 1))
    write_jsonl(paths["corpus"], corpus_rows(n_docs, seed=seed + 2))
    write_jsonl(paths["planted"], planted_topic_corpus(seed=seed + 3)[0])
    return paths
