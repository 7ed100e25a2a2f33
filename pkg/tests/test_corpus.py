import json

import pytest
from hypothesis import given, strategies as st

from sentisum.corpus import (CorpusError, LabeledExample, load_corpus, load_labeled, make_document,
                             segment_sentences, tokenize)


def surfaces(tokens):
    return [t.surface for t in tokens]


def test_segment_empty():
    assert segment_sentences("") == []


def test_segment_period_space():
    sents = segment_sentences("I loved it. It broke later.")
    assert [s.raw for s in sents] == ["I loved it.", "It broke later."]
    assert [s.index for s in sents] == [0, 1]


def test_segment_no_terminal_punctuation():
    assert [s.raw for s in segment_sentences("no terminal punctuation")] == ["no terminal punctuation"]


@pytest.mark.parametrize("text, expected", [
    ("Wow! Really? Yes.", ["Wow!", "Really?", "Yes."]),
    ("first para\n\nsecond para", ["first para", "second para"]),
    ("version 1.5 is out", ["version 1.5 is out"]),
    ("ends with dots...   next one", ["ends with dots...", "next one"]),
])
def test_segment_rules(text, expected):
    assert [s.raw for s in segment_sentences(text)] == expected


def test_tokenize_examples():
    assert surfaces(tokenize("The cat!")) == ["the", "cat"]
    assert tokenize("") == []
    assert surfaces(tokenize("a a a")) == ["a", "a", "a"]
    assert surfaces(tokenize("(hello), -- don't ...")) == ["hello", "don't"]
    assert [t.index for t in tokenize("x y z")] == [0, 1, 2]


@given(st.text(max_size=200))
def test_segment_tokenize_deterministic(text):
    assert segment_sentences(text) == segment_sentences(text)
    assert tokenize(text) == tokenize(text)


@given(st.text(max_size=200))
def test_tokens_come_from_input(text):
    lowered = text.lower()
    for tok in tokenize(text):
        assert tok.surface in lowered
        assert tok.surface and not any(c.isspace() for c in tok.surface)


@given(st.text(max_size=200))
def test_segmentation_covers_content(text):
    joined = "".join("".join(s.raw.split()) for s in segment_sentences(text))
    assert joined == "".join(text.split())


@given(st.text(max_size=200))
def test_sentence_indices_contiguous(text):
    assert [s.index for s in segment_sentences(text)] == list(range(len(segment_sentences(text))))


def test_make_document_drops_tokenless_sentences():
    with pytest.warns(UserWarning, match="token-less"):
        doc = make_document("d", "Good food. ... !!! Bad bill.")
    assert [s.raw for s in doc.sentences] == ["Good food.", "Bad bill."]
    assert [s.index for s in doc.sentences] == [0, 1]


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_load_corpus_example(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", [json.dumps({"id": "1", "text": "A. B.", "summary": "A."})])
    (doc,) = load_corpus(p)
    assert doc.id == "1"
    assert [s.raw for s in doc.sentences] == ["A.", "B."]
    assert doc.reference_summary == "A."


def test_load_corpus_autogenerates_ids(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", [json.dumps({"text": "x."}), json.dumps({"text": "y."})])
    assert [d.id for d in load_corpus(p)] == ["1", "2"]


def test_load_corpus_empty_file(tmp_path):
    p = tmp_path / "empty.jsonl"
    p.write_text("")
    assert load_corpus(p) == []


def test_load_corpus_invalid_json_names_line(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", [json.dumps({"text": "ok."}), "{not json"])
    with pytest.raises(CorpusError, match=":2:"):
        load_corpus(p)


def test_load_corpus_missing_text_names_line(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", [json.dumps({"text": "ok."}), "", json.dumps({"id": "z"})])
    with pytest.raises(CorpusError, match=":3:.*text"):
        load_corpus(p)


def test_load_corpus_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "nope.jsonl")


def test_load_labeled(tmp_path):
    p = write_lines(tmp_path / "l.jsonl", [json.dumps({"text": "good", "label": 1}),
                                          json.dumps({"text": "bad", "label": 0})])
    assert load_labeled(p) == [LabeledExample("good", 1), LabeledExample("bad", 0)]
    bad = write_lines(tmp_path / "bad.jsonl", [json.dumps({"text": "meh", "label": 2})])
    with pytest.raises(CorpusError, match=":1:"):
        load_labeled(bad)


def test_labeled_example_rejects_other_labels():
    with pytest.raises(ValueError):
        LabeledExample("x", 3)
