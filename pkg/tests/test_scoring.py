"""Caption scoring: P/R/F laws, hand-evaluated fixture, symmetry."""

from __future__ import annotations

import numpy as np
import pytest

from graphcap import (
    EmbeddingVector,
    EmptyInputError,
    PRFScore,
    TokenEmbeddingSet,
    embed_caption,
    hashed_text_vector,
    score_prf,
    tokenize_caption,
)
from graphcap.errors import DegenerateVectorError

WORDS = [
    "woman", "man", "dog", "cat", "kitchen", "park", "holds", "rides",
    "elderly", "young", "ball", "tree", "cooks", "watches", "frisbee",
]


def unit_set(tokens, rows):
    vectors = tuple(EmbeddingVector.of(np.array(row, dtype=float)) for row in rows)
    return TokenEmbeddingSet(tokens=tuple(tokens), vectors=vectors)


def word_set(words):
    return TokenEmbeddingSet(
        tokens=tuple(words), vectors=tuple(hashed_text_vector(w) for w in words)
    )


def test_tokenize_caption():
    assert tokenize_caption("An elderly woman, cooking!") == [
        "an",
        "elderly",
        "woman",
        "cooking",
    ]
    assert tokenize_caption("...") == []


def test_identical_sets_score_exactly_one():
    s = word_set(["a", "dog", "runs"])
    result = score_prf(s, s)
    assert result.precision == 1.0
    assert result.recall == 1.0
    assert result.f1 == 1.0
    assert not result.degenerate


def test_candidate_subset_of_orthogonal_reference():
    reference = unit_set(
        ["r1", "r2", "r3"],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
    )
    candidate = unit_set(["c1", "c2"], [[1, 0, 0, 0], [0, 1, 0, 0]])
    result = score_prf(reference, candidate)
    assert result.precision == 1.0
    assert result.recall == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_hand_evaluated_three_by_two_fixture():
    # cosine table: sim(r1,c1)=1, sim(r2,c2)=0.6, sim(r3,c2)=0.8, rest 0
    # P = (1.0 + 0.8) / 2 = 0.9
    # R = (1.0 + 0.6 + 0.8) / 3 = 0.8
    # F = 2 * 0.9 * 0.8 / (0.9 + 0.8) = 1.44 / 1.7 = 0.8470588235294118
    reference = unit_set(
        ["r1", "r2", "r3"],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
    )
    candidate = unit_set(["c1", "c2"], [[1, 0, 0, 0], [0, 0.6, 0.8, 0]])
    result = score_prf(reference, candidate)
    assert result.precision == pytest.approx(0.9, abs=1e-9)
    assert result.recall == pytest.approx(0.8, abs=1e-9)
    assert result.f1 == pytest.approx(0.8470588235294118, abs=1e-9)


def test_symmetry_law_on_random_sets(rng):
    for _ in range(200):
        a = word_set([WORDS[i] for i in rng.integers(0, len(WORDS), size=rng.integers(1, 6))])
        b = word_set([WORDS[i] for i in rng.integers(0, len(WORDS), size=rng.integers(1, 6))])
        ab = score_prf(a, b)
        ba = score_prf(b, a)
        assert ab.precision == pytest.approx(ba.recall, abs=1e-9)
        assert ab.recall == pytest.approx(ba.precision, abs=1e-9)


def test_token_order_invariance():
    a = word_set(["dog", "man", "park"])
    b = word_set(["park", "dog", "man"])
    candidate = word_set(["dog", "tree"])
    ra = score_prf(a, candidate)
    rb = score_prf(b, candidate)
    assert ra == rb


def test_f_is_harmonic_mean():
    reference = word_set(["woman", "kitchen"])
    candidate = word_set(["woman", "park", "dog"])
    r = score_prf(reference, candidate)
    assert r.f1 == pytest.approx(
        2 * r.precision * r.recall / (r.precision + r.recall), abs=1e-15
    )


def test_degenerate_flag_when_p_plus_r_is_zero():
    reference = unit_set(["r"], [[1, 0]])
    candidate = unit_set(["c"], [[0, 1]])
    result = score_prf(reference, candidate)
    assert result == PRFScore(precision=0.0, recall=0.0, f1=0.0, degenerate=True)


def test_empty_set_rejected():
    s = word_set(["dog"])
    empty = TokenEmbeddingSet(tokens=(), vectors=())
    with pytest.raises(EmptyInputError):
        score_prf(s, empty)
    with pytest.raises(EmptyInputError):
        embed_caption("!!!")


def test_token_set_invariants():
    with pytest.raises(ValueError):
        TokenEmbeddingSet(tokens=("a",), vectors=())
    with pytest.raises(DegenerateVectorError):
        TokenEmbeddingSet(
            tokens=("a",), vectors=(EmbeddingVector.of(np.zeros(3)),)
        )


def test_embed_caption_hashed_default():
    s = embed_caption("a small dog")
    assert s.tokens == ("a", "small", "dog")
    assert all(abs(v.norm - 1.0) < 1e-9 for v in s.vectors)
