import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sentisum import synthetic  # noqa: E402
from sentisum.corpus import LabeledExample, load_corpus  # noqa: E402
from sentisum.embeddings import load_embeddings  # noqa: E402
from sentisum.sentiment import TrainConfig, train  # noqa: E402
from sentisum.topics import fit_lda  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def table():
    return load_embeddings(DATA / "embeddings.txt")


@pytest.fixture(scope="session")
def labeled():
    return [LabeledExample(r["text"], r["label"]) for r in synthetic.labeled_rows(seed=1)]


@pytest.fixture(scope="session")
def sentiment_model(table, labeled):
    return train(labeled, table, TrainConfig())


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(DATA / "corpus.jsonl")


@pytest.fixture(scope="session")
def lda(corpus):
    return fit_lda(corpus, K=10, iterations=500, seed=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def workspace(tmp_path_factory):
    """Fixture data plus models trained through the CLI, shared by harness tests."""
    from sentisum.harness.cli import main

    root = tmp_path_factory.mktemp("ws")
    models = root / "models"
    assert main(["train-sentiment", "--labeled", str(DATA / "labeled.jsonl"),
                 "--embeddings", str(DATA / "embeddings.txt"), "--output-dir", str(models)]) == 0
    assert main(["fit-lda", "--corpus", str(DATA / "corpus.jsonl"), "--output-dir", str(models)]) == 0
    ws = {
        "root": root,
        "corpus": DATA / "corpus.jsonl",
        "embeddings": DATA / "embeddings.txt",
        "sentiment_model": models / "sentiment.json",
        "lda_model": models / "lda.json",
    }
    ws["args"] = ["--corpus", str(ws["corpus"]), "--embeddings", str(ws["embeddings"]),
                  "--sentiment-model", str(ws["sentiment_model"]), "--lda-model", str(ws["lda_model"])]
    return ws
