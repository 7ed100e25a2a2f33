import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from sentisum.corpus import Token, tokenize
from sentisum.embeddings import (EmbeddingError, EmbeddingTable, cosine, embed, load_embeddings,
                                 mean_embedding)

finite = st.floats(-1e3, 1e3, allow_nan=False)
vec8 = arrays(float, 8, elements=finite)


def test_load_without_header(tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("cat 1 0 0\ndog 0 1 0\n")
    t = load_embeddings(p)
    assert len(t) == 2 and t.dimension == 3
    np.testing.assert_array_equal(t.vector("dog"), [0, 1, 0])


def test_load_header_dimension_mismatch(tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("2 3\ncat 1 0 0\ndog 0 1 0 5\n")
    with pytest.raises(EmbeddingError, match=":3:"):
        load_embeddings(p)


def test_duplicate_word_last_wins(tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("cat 1 0\ncat 0 2\n")
    with pytest.warns(UserWarning, match="duplicate"):
        t = load_embeddings(p)
    assert len(t) == 1
    np.testing.assert_array_equal(t.vector("cat"), [0, 2])


def test_save_load_roundtrip(tmp_path, table):
    table.save(tmp_path / "t.txt")
    again = load_embeddings(tmp_path / "t.txt")
    assert again.words == table.words
    np.testing.assert_array_equal(again.matrix, table.matrix)
    assert again.fingerprint() == table.fingerprint()


def test_shipped_table_is_small(table):
    assert len(table) <= 100 and table.dimension == 8


def test_embed_known_unknown():
    t = EmbeddingTable({"a": [1.0, 2.0]}, 2)
    np.testing.assert_array_equal(embed(t, Token("a", 0)), [1, 2])
    np.testing.assert_array_equal(embed(t, Token("zzz", 0)), [0, 0])
    np.testing.assert_array_equal(embed(t, Token("a", 0)), embed(t, Token("a", 3)))


def test_mean_embedding_examples():
    t = EmbeddingTable({"x": [1.0, 0.0], "y": [0.0, 1.0]}, 2)
    np.testing.assert_array_equal(mean_embedding(t, tokenize("x y")), [0.5, 0.5])
    np.testing.assert_array_equal(mean_embedding(t, tokenize("x")), [1, 0])
    np.testing.assert_array_equal(mean_embedding(t, tokenize("y y y")), [0, 1])
    with pytest.raises(EmbeddingError):
        mean_embedding(t, [])


def test_mean_embedding_permutation_invariant(table, rng):
    toks = tokenize("great pizza the rude waiter and unknownword")
    for _ in range(10):
        perm = [toks[i] for i in rng.permutation(len(toks))]
        np.testing.assert_allclose(mean_embedding(table, perm), mean_embedding(table, toks), atol=1e-15)


def test_cosine_examples():
    assert cosine([3.0, 4.0], [3.0, 4.0]) == pytest.approx(1.0, abs=1e-15)
    assert cosine([1, 0], [0, 1]) == 0.0
    assert cosine([1, 2], [2, 4]) == pytest.approx(1.0, abs=1e-15)
    assert cosine([0, 0], [1, 1]) == 0.0
    with pytest.raises(EmbeddingError):
        cosine([1, 2], [1, 2, 3])


@given(vec8, vec8)
def test_cosine_symmetric_and_bounded(u, v):
    c = cosine(u, v)
    assert c == cosine(v, u)
    assert -1.0 <= c <= 1.0


@given(vec8, vec8, st.floats(1e-3, 1e3))
def test_cosine_scale_invariant(u, v, c):
    assert abs(cosine(u, c * v) - cosine(u, v)) <= 1e-12
