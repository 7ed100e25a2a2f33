import numpy as np
import pytest

from oracles import central_difference, rel_error
from sentisum.corpus import make_document
from sentisum.senti_loss import (ToyLM, loss_and_grad, nll, position_nll, summary_token_weights, toy_forward,
                                 train_toy, weighted_nll)


def test_weighted_nll_examples():
    logp = np.log([[0.5, 0.5], [0.75, 0.25]])
    assert weighted_nll(logp, [0, 1], [2.0, 0.0]) == pytest.approx(2 * np.log(2), abs=1e-15)
    assert round(weighted_nll(logp, [0, 1], [2.0, 0.0]), 4) == 1.3863
    assert weighted_nll(logp, [0, 1], [0.0, 0.0]) == 0.0
    assert weighted_nll(logp, [0, 1], [1.0, 1.0]) == nll(logp, [0, 1])
    with pytest.raises(ValueError):
        weighted_nll(logp, [0], [1.0, 1.0])


def test_weighted_nll_linear_in_lambda(rng):
    logp = np.log(rng.dirichlet(np.ones(5), size=6))
    targets = list(rng.integers(0, 5, size=6))
    lam = rng.uniform(0, 2, size=6)
    for c in (0.5, 2.0, 4.0):
        assert weighted_nll(logp, targets, c * lam) == pytest.approx(c * weighted_nll(logp, targets, lam),
                                                                     rel=1e-15)


def test_toy_forward_examples():
    model = ToyLM.zeros(4)
    out = toy_forward(model, [0, 3, 2])
    np.testing.assert_allclose(out, -np.log(4), atol=1e-15)
    rng = np.random.default_rng(1)
    model = ToyLM(rng.normal(size=(5, 4)))
    out = toy_forward(model, [1, 2, 0, 3])
    np.testing.assert_allclose(np.exp(out).sum(axis=1), 1.0, atol=1e-9)
    np.testing.assert_array_equal(out, toy_forward(model, [1, 2, 0, 3]))
    with pytest.raises(ValueError):
        toy_forward(model, [4])


def test_train_zero_epochs_unchanged():
    model = ToyLM(np.arange(12.0).reshape(4, 3))
    out = train_toy(model, [[0, 1, 2]], [[1.0, 1.0, 1.0]], epochs=0)
    np.testing.assert_array_equal(out.logits, model.logits)


def test_train_repeated_sequence_fits():
    seq = [0, 2, 1, 3]
    history = []
    model = train_toy(ToyLM.zeros(4), [seq], [[1.0] * 4], lr=1.0, epochs=300, history=history)
    assert history[-1] < 0.1
    assert history[-1] <= history[0]
    assert np.all(np.exp(toy_forward(model, seq))[np.arange(4), seq] > 0.97)


@pytest.mark.parametrize("seed", range(10))
def test_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    V = int(rng.integers(2, 5))
    seqs = [list(rng.integers(0, V, size=rng.integers(1, 6))) for _ in range(3)]
    lams = [list(rng.uniform(0, 2, size=len(s))) for s in seqs]
    logits = rng.normal(size=(V + 1, V))
    _, grad = loss_and_grad(ToyLM(logits), seqs, lams)
    fd = central_difference(lambda L: loss_and_grad(ToyLM(L), seqs, lams)[0], logits)
    assert rel_error(grad, fd) <= 1e-4


def test_gradient_scales_with_lambda():
    rng = np.random.default_rng(3)
    logits = rng.normal(size=(4, 3))
    seq = [2, 0, 1]
    base = None
    for lam_t in (0.5, 1.0, 2.0):
        lams = [0.0, lam_t, 0.0]
        fd = central_difference(lambda L: loss_and_grad(ToyLM(L), [seq], [lams])[0], logits)
        _, grad = loss_and_grad(ToyLM(logits), [seq], [lams])
        assert rel_error(grad, fd) <= 1e-4
        if base is None:
            base = fd / lam_t
        np.testing.assert_allclose(fd / lam_t, base, atol=1e-8)


def weighting_fixture():
    # position 1 of A and position 2 of B share context 0 but want different targets
    seqs = [[0, 1], [3, 0, 2]]
    emphasised = [[0.1, 1.0], [0.1, 1.0, 0.1]]
    uniform = [[1.0, 1.0], [1.0, 1.0, 1.0]]
    return seqs, emphasised, uniform


def test_concentrated_lambda_lowers_emphasised_position_nll():
    seqs, emphasised, uniform = weighting_fixture()
    a = train_toy(ToyLM.zeros(4), seqs, emphasised, lr=0.5, epochs=200)
    b = train_toy(ToyLM.zeros(4), seqs, uniform, lr=0.5, epochs=200)
    assert position_nll(a, seqs, 1) < position_nll(b, seqs, 1)


def test_summary_token_weights(sentiment_model, table):
    doc = make_document("d", "The pizza was delicious. The bill was awful.")
    lam = summary_token_weights(doc.sentences, sentiment_model, table, beta=1.0, m=32)
    assert len(lam) == sum(len(s) for s in doc.sentences)
    assert all(0 < v < 1 for v in lam)
    first = lam[:4]
    assert max(first) == first[3]
