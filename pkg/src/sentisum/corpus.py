"""Text ingestion: sentence segmentation, tokenization and the document model."""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

_SPLIT_RE = re.compile(r"(?<=[.!?])\s+|\n\s*\n")


class CorpusError(ValueError):
    """Raised for malformed corpus or labeled-data files."""


@dataclass(frozen=True)
class Token:
    surface: str
    index: int

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"invalid token surface {self.surface!r}")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    index: int
    raw: str

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]
    reference_summary: Optional[str] = None

    def __post_init__(self):
        if not self.sentences:
            raise ValueError(f"document {self.id!r} has no sentences")
        for i, s in enumerate(self.sentences):
            if s.index != i:
                raise ValueError(f"document {self.id!r}: sentence index {s.index} at position {i}")

    def __len__(self):
        return len(self.sentences)


@dataclass(frozen=True)
class LabeledExample:
    text: str
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label!r}")


def _strip_token(word: str) -> str:
    start, end = 0, len(word)
    while start < end and not word[start].isalnum():
        start += 1
    while end > start and not word[end - 1].isalnum():
        end -= 1
    return word[start:end]


def tokenize(raw: str) -> list[Token]:
    """Lowercase, split on whitespace and trim non-alphanumeric edges.

    >>> [t.surface for t in tokenize("The cat!")]
    ['the', 'cat']
    """
    surfaces = (_strip_token(w) for w in raw.lower().split())
    return [Token(s, i) for i, s in enumerate(s for s in surfaces if s)]


def segment_sentences(text: str) -> list[Sentence]:
    """Split on ``.``/``!``/``?`` followed by whitespace, and on blank lines.

    Sentences keep their raw text (stripped). Pieces that tokenize to nothing
    are still returned here; :func:`make_document` drops them.
    """
    pieces = (p.strip() for p in _SPLIT_RE.split(text))
    pieces = [p for p in pieces if p]
    return [Sentence(tuple(tokenize(p)), i, p) for i, p in enumerate(pieces)]


def make_document(doc_id: str, text: str, reference_summary: Optional[str] = None) -> Document:
    """Segment ``text`` and drop sentences with no tokens, reindexing the rest."""
    kept = []
    for s in segment_sentences(text):
        if not s.tokens:
            warnings.warn(f"document {doc_id!r}: dropping token-less sentence {s.raw!r}")
            continue
        kept.append(Sentence(s.tokens, len(kept), s.raw))
    if not kept:
        raise CorpusError(f"document {doc_id!r} has no rankable sentences")
    return Document(doc_id, tuple(kept), reference_summary)


def _read_jsonl(path) -> Iterable[tuple[int, dict]]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise CorpusError(f"{path}:{lineno}: expected a JSON object")
            yield lineno, obj


def load_corpus(path) -> list[Document]:
    """Read a JSON-lines corpus with fields ``id`` (optional), ``text``, ``summary``."""
    docs = []
    for lineno, obj in _read_jsonl(path):
        if not isinstance(obj.get("text"), str):
            raise CorpusError(f"{path}:{lineno}: missing required string field 'text'")
        doc_id = str(obj.get("id", lineno))
        summary = obj.get("summary")
        try:
            docs.append(make_document(doc_id, obj["text"], summary))
        except CorpusError as exc:
            raise CorpusError(f"{path}:{lineno}: {exc}") from exc
    return docs


def load_labeled(path) -> list[LabeledExample]:
    """Read JSON-lines ``{"text": ..., "label": 0|1}`` sentiment training data."""
    out = []
    for lineno, obj in _read_jsonl(path):
        text, label = obj.get("text"), obj.get("label")
        if not isinstance(text, str) or label not in (0, 1) or isinstance(label, bool):
            raise CorpusError(f"{path}:{lineno}: need string 'text' and label 0 or 1")
        out.append(LabeledExample(text, label))
    return out


def write_jsonl(path, rows: Iterable[dict]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
