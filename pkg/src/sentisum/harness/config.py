"""Run configuration: flat ``key = value`` files overridden by CLI flags."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from ..graph import RankConfig
from ..sentiment import TrainConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    corpus: Optional[str] = None
    embeddings: Optional[str] = None
    sentiment_model: Optional[str] = None
    lda_model: Optional[str] = None
    labeled: Optional[str] = None
    output_dir: str = "out"
    # ranking
    a: float = 0.1
    b: float = 0.35
    d: float = 0.85
    tol: float = 1e-6
    max_iter: int = 200
    L: Optional[int] = None
    k: int = 3
    m: int = 512
    lexical: str = "cosine"
    denominator: str = "lexical"
    edge_direction: str = "literal"
    fold_in_iterations: int = 50
    # token weights
    beta: float = 1.0
    sentiment_mode: str = "positive"
    # evaluation
    pooling: str = "document"
    # sentiment training
    learning_rate: float = 0.5
    epochs: int = 300
    l2: float = 0.0
    # LDA
    K: int = 10
    alpha: Optional[float] = None
    eta: float = 0.01
    iterations: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.pooling not in ("document", "corpus"):
            raise ConfigError("pooling must be 'document' or 'corpus'")
        if self.sentiment_mode not in ("positive", "intensity"):
            raise ConfigError("sentiment_mode must be 'positive' or 'intensity'")
        try:
            self.rank_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def rank_config(self) -> RankConfig:
        return RankConfig(a=self.a, b=self.b, d=self.d, tol=self.tol, max_iter=self.max_iter, L=self.L,
                          k=self.k, m=self.m, lexical=self.lexical, denominator=self.denominator,
                          edge_direction=self.edge_direction, fold_in_iterations=self.fold_in_iterations,
                          seed=self.seed)

    def train_config(self) -> TrainConfig:
        return TrainConfig(learning_rate=self.learning_rate, epochs=self.epochs, seed=self.seed, l2=self.l2)

    def echo(self) -> dict:
        return dataclasses.asdict(self)

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError("missing required setting(s): " + ", ".join(missing))


_FIELDS = {f.name: f for f in fields(RunConfig)}


def _coerce(name: str, value: str):
    f = _FIELDS[name]
    kind = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", str(f.type))
    if value.lower() in ("none", "") and kind.startswith("Optional"):
        return None
    try:
        if "int" in kind:
            return int(value)
        if "float" in kind:
            return float(value)
    except ValueError as exc:
        raise ConfigError(f"{name}: cannot parse {value!r}") from exc
    return value


def parse_config_text(text: str, source: str = "<config>") -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, value)
    return values


def load_config(path=None, overrides: Optional[dict] = None) -> RunConfig:
    """Build a RunConfig from an optional file plus overrides (overrides win)."""
    values = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        values.update(parse_config_text(path.read_text(encoding="utf-8"), str(path)))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = _coerce(key, value) if isinstance(value, str) else value
    return RunConfig(**values)
