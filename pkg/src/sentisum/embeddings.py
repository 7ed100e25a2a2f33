"""Word-vector table plus the mean-embedding and cosine helpers."""

from __future__ import annotations

import hashlib
import warnings
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import Token


class EmbeddingError(ValueError):
    pass


class EmbeddingTable:
    """Immutable word -> vector map with a zero out-of-vocabulary vector."""

    def __init__(self, entries: Mapping[str, Sequence[float]], dimension: int):
        self.dimension = int(dimension)
        self.words = tuple(entries)
        self._index = {w: i for i, w in enumerate(self.words)}
        matrix = np.zeros((len(self.words), self.dimension))
        for i, w in enumerate(self.words):
            vec = np.asarray(entries[w], dtype=float)
            if vec.shape != (self.dimension,):
                raise EmbeddingError(f"vector for {w!r} has shape {vec.shape}, expected ({self.dimension},)")
            matrix[i] = vec
        if not np.all(np.isfinite(matrix)):
            raise EmbeddingError("embedding entries must be finite")
        matrix.setflags(write=False)
        self.matrix = matrix
        self.oov_vector = np.zeros(self.dimension)
        self.oov_vector.setflags(write=False)

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self._index

    def vector(self, surface: str) -> np.ndarray:
        i = self._index.get(surface)
        return self.oov_vector if i is None else self.matrix[i]

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.dimension).encode())
        for w, row in zip(self.words, self.matrix):
            h.update(w.encode("utf-8") + b"\0" + row.tobytes())
        return h.hexdigest()[:16]

    def save(self, path) -> None:
        with Path(path).open("w", encoding="utf-8") as fh:
            fh.write(f"{len(self.words)} {self.dimension}\n")
            for w, row in zip(self.words, self.matrix):
                fh.write(w + " " + " ".join(repr(float(x)) for x in row) + "\n")


def load_embeddings(path) -> EmbeddingTable:
    """Read word2vec text format; an optional ``"V E"`` header fixes the dimension."""
    entries: dict[str, list[float]] = {}
    dimension = None
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                dimension = int(parts[1])
                continue
            word, values = parts[0], parts[1:]
            if dimension is None:
                dimension = len(values)
            if len(values) != dimension:
                raise EmbeddingError(
                    f"{path}:{lineno}: expected {dimension} values for {word!r}, got {len(values)}")
            try:
                vec = [float(v) for v in values]
            except ValueError as exc:
                raise EmbeddingError(f"{path}:{lineno}: {exc}") from exc
            if word in entries:
                warnings.warn(f"{path}:{lineno}: duplicate word {word!r}, keeping last vector")
                del entries[word]
            entries[word] = vec
    if dimension is None:
        raise EmbeddingError(f"{path}: no embeddings found")
    return EmbeddingTable(entries, dimension)


def embed(table: EmbeddingTable, token: Token) -> np.ndarray:
    return table.vector(token.surface)


def embed_all(table: EmbeddingTable, tokens: Iterable[Token]) -> np.ndarray:
    """Stack token vectors into an ``(n, E)`` array."""
    rows = [table.vector(t.surface) for t in tokens]
    if not rows:
        return np.zeros((0, table.dimension))
    return np.vstack(rows)


def mean_embedding(table: EmbeddingTable, tokens: Sequence[Token]) -> np.ndarray:
    if not tokens:
        raise EmbeddingError("mean_embedding of an empty token list")
    return embed_all(table, tokens).mean(axis=0)


def cosine(u, v) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise EmbeddingError(f"dimension mismatch: {u.shape} vs {v.shape}")
    su, sv = np.max(np.abs(u), initial=0.0), np.max(np.abs(v), initial=0.0)
    if su == 0.0 or sv == 0.0:
        return 0.0
    # prescale so tiny or huge components neither underflow nor overflow
    u, v = u / su, v / sv
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    c = float(np.dot(u, v) / (nu * nv))
    return min(1.0, max(-1.0, c))
