"""Command-line entry point: ``sentisum <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .. import sentiment, topics
from ..corpus import CorpusError, load_corpus, load_labeled, make_document
from ..embeddings import EmbeddingError, load_embeddings
from ..synthetic import write_fixtures
from .config import ConfigError, RunConfig, load_config
from .experiments import (HarnessError, Resources, best_cells, document_graphs, dump_json, evaluate_results,
                          load_resources, ranked, rows_to_csv, run_ablation, run_sweep, summarize,
                          textrank_results, METRICS)

log = logging.getLogger("sentisum")

_OVERRIDABLE = {
    "corpus": str, "embeddings": str, "sentiment_model": str, "lda_model": str, "labeled": str,
    "output_dir": str, "a": float, "b": float, "d": float, "tol": float, "max_iter": int, "L": int,
    "k": int, "m": int, "lexical": str, "denominator": str, "edge_direction": str,
    "fold_in_iterations": int, "beta": float, "sentiment_mode": str, "pooling": str,
    "learning_rate": float, "epochs": int, "l2": float, "K": int, "alpha": float, "eta": float,
    "iterations": int, "seed": int,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value configuration file; flags override it")
    for name, kind in _OVERRIDABLE.items():
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=kind, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sentisum", description="Sentiment-aware extractive summarization.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize one document (by id, or text on stdin)")
    _add_common(p)
    p.add_argument("--doc-id", help="document id in --corpus; omit to read raw text from stdin")
    p.add_argument("--mode", choices=("ecpe", "textrank"), default="ecpe")
    p.add_argument("--output", help="write the summary here instead of stdout")
    p.add_argument("--debug-json", help="write scores, cause sets and the composite matrix here")

    for name, helptext in (("evaluate", "corpus ROUGE-1/2/L report"),
                           ("ablate", "full / wo_senti / wo_topic / wo_both table"),
                           ("sweep", "21 x 21 grid over a, b in {0, 0.05, ..., 1}")):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        if name == "evaluate":
            p.add_argument("--mode", choices=("ecpe", "textrank"), default="ecpe")

    p = sub.add_parser("train-sentiment", help="fit the logistic sentiment model")
    _add_common(p)
    p.add_argument("--output", help="model path (default: <output_dir>/sentiment.json)")

    p = sub.add_parser("fit-lda", help="fit sentence-level LDA on the corpus")
    _add_common(p)
    p.add_argument("--output", help="model path (default: <output_dir>/lda.json)")

    p = sub.add_parser("make-fixtures", help="write the synthetic demo data set")
    p.add_argument("directory")
    p.add_argument("--docs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _config(args) -> RunConfig:
    overrides = {name: getattr(args, name) for name in _OVERRIDABLE}
    return load_config(args.config, overrides)


def _out_dir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def cmd_summarize(args) -> int:
    config = _config(args)
    need_models = args.mode == "ecpe"
    if args.doc_id is not None:
        res = load_resources(config, need_models)
        matches = [d for d in res.docs if d.id == args.doc_id]
        if not matches:
            raise HarnessError(f"document {args.doc_id!r} not found in {config.corpus}")
        doc = matches[0]
    else:
        res = Resources([])
        if need_models:
            config.require("embeddings", "sentiment_model", "lda_model")
            res.table = load_embeddings(config.embeddings)
            res.model = sentiment.SentimentModel.load(config.sentiment_model)
            res.lda = topics.LdaModel.load(config.lda_model)
        doc = make_document("stdin", sys.stdin.read())
    text, debug = summarize(doc, res, config, args.mode)
    if not debug["rank"]["converged"]:
        log.warning("ranking did not converge within max_iter=%d (scores are the last iterate)", config.max_iter)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if args.debug_json:
        dump_json(debug, args.debug_json)
    return 0


def cmd_evaluate(args) -> int:
    config = _config(args)
    res = load_resources(config, need_models=args.mode == "ecpe")
    rank_config = config.rank_config()
    if args.mode == "textrank":
        results = textrank_results(res.docs, rank_config)
    else:
        results = ranked(document_graphs(res, rank_config), rank_config)
    report = evaluate_results(res.docs, results, config.pooling, {"mode": args.mode, **config.echo()})
    if report.convergence["not_converged"]:
        log.warning("%d of %d documents did not converge within max_iter=%d (scores are the last iterate)",
                    report.convergence["not_converged"], len(report.documents), config.max_iter)
    out = _out_dir(config)
    dump_json(report.to_dict(), out / "evaluate.json")
    print(f"wrote {out / 'evaluate.json'}")
    _write(out / "evaluate.csv", report.to_csv())
    print("  ".join(f"{m}={report.means[m]:.4f}" for m in METRICS))
    return 0


def cmd_ablate(args) -> int:
    config = _config(args)
    res = load_resources(config)
    rows = run_ablation(res, config)
    out = _out_dir(config)
    _write(out / "ablation.csv", rows_to_csv(rows, ["model", "a", "b", *METRICS]))
    dump_json({"schema_version": 1, "rows": rows, "config": config.echo()}, out / "ablation.json")
    for r in rows:
        print(f"{r['model']:<9}" + "  ".join(f"{m}={r[m]:.4f}" for m in METRICS))
    return 0


def cmd_sweep(args) -> int:
    config = _config(args)
    res = load_resources(config)
    rows = run_sweep(res, config)
    best = best_cells(rows)
    out = _out_dir(config)
    _write(out / "sweep.csv", rows_to_csv(rows, ["a", "b", *METRICS]))
    dump_json({"schema_version": 1, "cells": len(rows), "best": best, "config": config.echo()},
              out / "sweep_best.json")
    for m, cell in best.items():
        print(f"best {m}: a={cell['a']:.2f} b={cell['b']:.2f} value={cell['value']:.4f}")
    return 0


def cmd_train_sentiment(args) -> int:
    config = _config(args)
    config.require("labeled", "embeddings")
    examples = load_labeled(config.labeled)
    table = load_embeddings(config.embeddings)
    history: list = []
    model = sentiment.train(examples, table, config.train_config(), history)
    path = Path(args.output) if args.output else _out_dir(config) / "sentiment.json"
    model.save(path)
    acc = sentiment.accuracy(model, examples, table)
    print(f"wrote {path}  examples={len(examples)} loss={history[0]:.4f}->{history[-1]:.4f} "
          f"accuracy={acc:.4f}")
    return 0


def cmd_fit_lda(args) -> int:
    config = _config(args)
    config.require("corpus")
    docs = load_corpus(config.corpus)
    model = topics.fit_lda(docs, config.K, config.alpha, config.eta, config.iterations, config.seed)
    path = Path(args.output) if args.output else _out_dir(config) / "lda.json"
    model.save(path)
    print(f"wrote {path}  K={model.K} V={len(model.vocab)} alpha={model.alpha:g} eta={model.eta:g}")
    return 0


def cmd_make_fixtures(args) -> int:
    for name, path in write_fixtures(args.directory, args.docs, args.seed).items():
        print(f"wrote {name}: {path}")
    return 0


COMMANDS = {
    "summarize": cmd_summarize,
    "evaluate": cmd_evaluate,
    "ablate": cmd_ablate,
    "sweep": cmd_sweep,
    "train-sentiment": cmd_train_sentiment,
    "fit-lda": cmd_fit_lda,
    "make-fixtures": cmd_make_fixtures,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, CorpusError, EmbeddingError, HarnessError, FileNotFoundError, ValueError) as exc:
        print(f"sentisum {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
