"""Corpus-level summarization, ROUGE evaluation, ablation and (a, b) sweep."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from ..attribution import token_weights
from ..corpus import Document, load_corpus, tokenize
from ..embeddings import EmbeddingTable, embed_all, load_embeddings
from ..graph import RankConfig, RankResult, SentenceGraph, build_graph, rank, select_summary, textrank
from ..rouge import RougeScore, lcs_length, rouge_n_counts
from ..sentiment import SentimentModel, sentence_probability
from ..topics import LdaModel
from .config import ConfigError, RunConfig

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
METRICS = ("rouge1", "rouge2", "rougeL")
ABLATION_ROWS = ("full", "wo_senti", "wo_topic", "wo_both")
SWEEP_STEPS = 20


class HarnessError(RuntimeError):
    pass


@dataclass
class Resources:
    docs: list
    table: Optional[EmbeddingTable] = None
    model: Optional[SentimentModel] = None
    lda: Optional[LdaModel] = None


def load_resources(config: RunConfig, need_models: bool = True) -> Resources:
    config.require("corpus")
    res = Resources(load_corpus(config.corpus))
    if need_models:
        config.require("embeddings", "sentiment_model", "lda_model")
        res.table = load_embeddings(config.embeddings)
        res.model = SentimentModel.load(config.sentiment_model)
        res.model.check_table(res.table)
        res.lda = LdaModel.load(config.lda_model)
    return res


def summary_text(doc: Document, result: RankResult) -> str:
    return " ".join(s.raw for s in select_summary(doc, result, len(result.selected)))


# -- per-document graphs -------------------------------------------------------

def document_graphs(res: Resources, rank_config: RankConfig) -> list[SentenceGraph]:
    """w, Psi, Theta for every document; Omega is recombined per (a, b) later."""
    return [build_graph(doc, res.model, res.lda, res.table, rank_config) for doc in res.docs]


def textrank_results(docs: Sequence[Document], rank_config: RankConfig) -> list[RankResult]:
    return [textrank(doc, rank_config)[1] for doc in docs]


def ranked(graphs: Sequence[SentenceGraph], rank_config: RankConfig) -> list[RankResult]:
    return [rank(g.recombine(rank_config.a, rank_config.b), rank_config) for g in graphs]


# -- evaluation ------------------------------------------------------------------

@dataclass
class DocumentScore:
    id: str
    rouge1: float
    rouge2: float
    rougeL: float
    iterations: int
    converged: bool
    selected: list = field(default_factory=list)


@dataclass
class EvalReport:
    documents: list
    means: dict
    skipped: int
    pooling: str
    config: dict = field(default_factory=dict)

    @property
    def convergence(self) -> dict:
        its = [d.iterations for d in self.documents]
        return {"converged": sum(d.converged for d in self.documents),
                "not_converged": sum(not d.converged for d in self.documents),
                "max_iterations": max(its) if its else 0}

    def score(self) -> RougeScore:
        return RougeScore(*(self.means[m] for m in METRICS))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "pooling": self.pooling,
            "skipped": self.skipped,
            "means": dict(self.means),
            "convergence": self.convergence,
            "config": self.config,
            "documents": [vars(d) for d in self.documents],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", *METRICS, "iterations", "converged"])
        for d in self.documents:
            w.writerow([d.id, repr(d.rouge1), repr(d.rouge2), repr(d.rougeL), d.iterations, int(d.converged)])
        w.writerow(["MEAN", *(repr(self.means[m]) for m in METRICS), "", ""])
        return buf.getvalue()


def parse_eval_csv(text: str) -> tuple[list[DocumentScore], dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    docs = [DocumentScore(r["id"], float(r["rouge1"]), float(r["rouge2"]), float(r["rougeL"]),
                          int(r["iterations"]), bool(int(r["converged"])))
            for r in rows if r["id"] != "MEAN"]
    mean = next(r for r in rows if r["id"] == "MEAN")
    return docs, {m: float(mean[m]) for m in METRICS}


def evaluate_results(docs: Sequence[Document], results: Sequence[RankResult], pooling: str = "document",
                     config: Optional[dict] = None) -> EvalReport:
    """ROUGE-1/2/L recall per document, averaged (or pooled) over the corpus."""
    scored, skipped = [], 0
    pooled = {m: [0, 0] for m in METRICS}
    for doc, result in zip(docs, results, strict=True):
        if not doc.reference_summary:
            skipped += 1
            continue
        system = tokenize(summary_text(doc, result))
        reference = tokenize(doc.reference_summary)
        counts = {
            "rouge1": rouge_n_counts(system, reference, 1),
            "rouge2": rouge_n_counts(system, reference, 2),
            "rougeL": (lcs_length(system, reference), len(reference)),
        }
        for m, (num, den) in counts.items():
            pooled[m][0] += num
            pooled[m][1] += den
        vals = {m: (num / den if den else 0.0) for m, (num, den) in counts.items()}
        scored.append(DocumentScore(doc.id, vals["rouge1"], vals["rouge2"], vals["rougeL"],
                                    result.iterations, result.converged, list(result.selected)))
    if not scored:
        raise HarnessError("no documents with reference summaries to score")
    if skipped:
        log.warning("skipped %d document(s) without a reference summary", skipped)
    if pooling == "corpus":
        means = {m: (num / den if den else 0.0) for m, (num, den) in pooled.items()}
    else:
        means = {m: sum(getattr(d, m) for d in scored) / len(scored) for m in METRICS}
    return EvalReport(scored, means, skipped, pooling, config or {})


# -- ablation and sweep ------------------------------------------------------------

def ablation_settings(a: float, b: float) -> list[tuple[str, float, float]]:
    return [("full", a, b), ("wo_senti", 0.0, b), ("wo_topic", a, 0.0), ("wo_both", 0.0, 0.0)]


def run_ablation(res: Resources, config: RunConfig, graphs=None) -> list[dict]:
    rank_config = config.rank_config()
    graphs = graphs if graphs is not None else document_graphs(res, rank_config)
    rows = []
    for label, a, b in ablation_settings(config.a, config.b):
        cfg = rank_config.with_weights(a, b)
        report = evaluate_results(res.docs, ranked(graphs, cfg), config.pooling)
        rows.append({"model": label, "a": a, "b": b, **report.means})
    return rows


def sweep_lattice(steps: int = SWEEP_STEPS) -> list[float]:
    return [i / steps for i in range(steps + 1)]


def run_sweep(res: Resources, config: RunConfig, graphs=None) -> list[dict]:
    rank_config = config.rank_config()
    graphs = graphs if graphs is not None else document_graphs(res, rank_config)
    rows = []
    for a in sweep_lattice():
        for b in sweep_lattice():
            cfg = rank_config.with_weights(a, b)
            report = evaluate_results(res.docs, ranked(graphs, cfg), config.pooling)
            rows.append({"a": a, "b": b, **report.means})
    return rows


def best_cells(rows: Sequence[dict]) -> dict:
    """Per-metric argmax; ties go to the lexicographically smallest (a, b)."""
    best = {}
    for m in METRICS:
        row = min(rows, key=lambda r: (-r[m], r["a"], r["b"]))
        best[m] = {"a": row["a"], "b": row["b"], "value": row[m]}
    return best


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
    return buf.getvalue()


def parse_rows_csv(text: str) -> list[dict]:
    out = []
    for r in csv.DictReader(io.StringIO(text)):
        out.append({k: (v if k == "model" else float(v)) for k, v in r.items()})
    return out


# -- single-document summarization -------------------------------------------------

def summarize(doc: Document, res: Resources, config: RunConfig, mode: str = "ecpe"):
    """Return (summary text, debug dict) for one document."""
    rank_config = config.rank_config()
    if mode == "textrank":
        graph, result = textrank(doc, rank_config)
    elif mode == "ecpe":
        if res.table is None or res.model is None or res.lda is None:
            raise ConfigError("ecpe mode needs embeddings, sentiment_model and lda_model")
        graph = build_graph(doc, res.model, res.lda, res.table, rank_config)
        result = rank(graph, rank_config)
    else:
        raise ConfigError(f"unknown mode {mode!r}")
    debug = {
        "schema_version": SCHEMA_VERSION,
        "id": doc.id,
        "mode": mode,
        "rank": result.to_dict(),
        "omega": graph.composite.tolist(),
        "sentences": [],
    }
    for i, s in enumerate(doc.sentences):
        entry = {"index": i, "raw": s.raw}
        if graph.attributions:
            attr = graph.attributions[i]
            p = sentence_probability(res.model, embed_all(res.table, s.tokens), config.sentiment_mode)
            entry["attribution"] = list(attr.per_token)
            entry["cause_set"] = [t.surface for t in graph.cause_sets[i].tokens]
            entry["sentiment_p"] = p
            entry["lambda"] = list(token_weights(attr, p, config.beta).lambdas)
        if graph.topic_mixtures:
            entry["topics"] = list(graph.topic_mixtures[i].probs)
        debug["sentences"].append(entry)
    return summary_text(doc, result), debug


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
