"""Hungarian step vs an exhaustive-permutation oracle."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcap import AssignmentResult, InvalidScoreError, hungarian_assign


def brute_force_max(matrix: np.ndarray) -> float:
    """Best total over all maximal one-to-one matchings, by enumeration.

    Totals are summed in row order, the same canonical order the library
    reports pairs in, so optimal totals compare bitwise-equal.
    """
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return 0.0
    if rows <= cols:
        candidates = (
            tuple((i, perm[i]) for i in range(rows))
            for perm in itertools.permutations(range(cols), rows)
        )
    else:
        candidates = (
            tuple(sorted((perm[j], j) for j in range(cols)))
            for perm in itertools.permutations(range(rows), cols)
        )
    return max(sum(matrix[r, c] for r, c in pairs) for pairs in candidates)


def test_identity_like_matrix():
    result = hungarian_assign([[1.0, 0.0], [0.0, 1.0]])
    assert [(p.source, p.target) for p in result.pairs] == [(0, 0), (1, 1)]
    assert result.unmatched_source == ()
    assert result.unmatched_target == ()


def test_three_by_three_fixture_matches_oracle():
    matrix = np.array([[0.9, 0.1, 0.2], [0.2, 0.8, 0.1], [0.3, 0.2, 0.95]])
    result = hungarian_assign(matrix)
    assert [(p.source, p.target) for p in result.pairs] == [(0, 0), (1, 1), (2, 2)]
    assert result.total_score() == pytest.approx(2.65)
    assert result.total_score() == brute_force_max(matrix)


def test_rectangular_forces_unmatched_target():
    result = hungarian_assign([[0.9, 0.1, 0.2], [0.2, 0.8, 0.1]])
    assert len(result.pairs) == 2
    assert len(result.unmatched_target) == 1
    assert result.unmatched_source == ()


def test_rectangular_forces_unmatched_source():
    result = hungarian_assign([[0.9, 0.1], [0.8, 0.2], [0.7, 0.3]])
    assert len(result.pairs) == 2
    assert len(result.unmatched_source) == 1


def test_empty_matrix_variants():
    assert hungarian_assign([]) == AssignmentResult()
    result = hungarian_assign(np.zeros((0, 3)))
    assert result.pairs == ()
    assert result.unmatched_target == (0, 1, 2)
    result = hungarian_assign(np.zeros((2, 0)))
    assert result.unmatched_source == (0, 1)


def test_rejects_non_finite_and_out_of_range():
    with pytest.raises(InvalidScoreError):
        hungarian_assign([[0.5, float("nan")]])
    with pytest.raises(InvalidScoreError):
        hungarian_assign([[0.5, float("inf")]])
    with pytest.raises(InvalidScoreError):
        hungarian_assign([[1.5]])


def test_tie_breaking_lexicographically_smallest():
    result = hungarian_assign(np.zeros((3, 3)))
    assert [(p.source, p.target) for p in result.pairs] == [(0, 0), (1, 1), (2, 2)]
    # two optimal assignments: (0,0),(1,1) and (0,1),(1,0); first wins
    result = hungarian_assign([[0.5, 0.5], [0.5, 0.5]])
    assert [(p.source, p.target) for p in result.pairs] == [(0, 0), (1, 1)]
    # forced off-diagonal optimum unaffected
    result = hungarian_assign([[0.0, 1.0], [1.0, 0.0]])
    assert [(p.source, p.target) for p in result.pairs] == [(0, 1), (1, 0)]


def test_valid_pairs_thresholding_is_strict():
    result = hungarian_assign([[1.0, 0.0], [0.0, 0.9]])
    assert [(p.source, p.target) for p in result.valid_pairs(0.9)] == [(0, 0)]
    assert result.valid_pairs(1.0) == ()


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 2**32 - 1),
)
def test_matches_brute_force_on_random_matrices(rows, cols, seed):
    rng = np.random.default_rng(seed)
    matrix = rng.uniform(-1.0, 1.0, size=(rows, cols))
    result = hungarian_assign(matrix)
    assert len(result.pairs) == min(rows, cols)
    assert result.total_score() == brute_force_max(matrix)
    used_sources = [p.source for p in result.pairs] + list(result.unmatched_source)
    used_targets = [p.target for p in result.pairs] + list(result.unmatched_target)
    assert sorted(used_sources) == list(range(rows))
    assert sorted(used_targets) == list(range(cols))
