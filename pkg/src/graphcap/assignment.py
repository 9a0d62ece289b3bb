"""Optimal one-to-one assignment over a similarity matrix.

Wraps the Hungarian method (scipy's linear_sum_assignment) with the
conventions the matcher needs: rectangular inputs are padded square with
dummy entries scoring -2 (strictly below any cosine, so a dummy can never
displace a real pairing), dummy matches surface as unmatched indices, and
ties between equally good assignments break to the lexicographically
smallest (source, target) pair sequence so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InvalidScoreError

DUMMY_SCORE = -2.0


@dataclass(frozen=True)
class AssignmentPair:
    source: int
    target: int
    score: float


@dataclass(frozen=True)
class AssignmentResult:
    pairs: tuple[AssignmentPair, ...] = ()
    unmatched_source: tuple[int, ...] = ()
    unmatched_target: tuple[int, ...] = ()

    def total_score(self) -> float:
        return sum(p.score for p in self.pairs)

    def valid_pairs(self, tau: float) -> tuple[AssignmentPair, ...]:
        """Pairs whose similarity strictly exceeds the threshold."""
        return tuple(p for p in self.pairs if p.score > tau)


def _max_total(matrix: np.ndarray) -> float:
    rows, cols = linear_sum_assignment(matrix, maximize=True)
    return float(matrix[rows, cols].sum())


def _lexicographic_optimal(matrix: np.ndarray) -> list[int]:
    """Column choice per row achieving the maximum total, lexicographically
    smallest among all optimal assignments.

    Walks rows in order; for each, commits to the smallest column that still
    admits an optimal completion (checked by re-solving the remaining
    subproblem). The tolerance only absorbs float re-association noise, far
    below any meaningful score difference.
    """
    n = matrix.shape[0]
    total = _max_total(matrix)
    tol = 16 * n * np.finfo(float).eps * max(1.0, abs(total))

    row_ind, col_ind = linear_sum_assignment(matrix, maximize=True)
    reference = dict(zip(row_ind.tolist(), col_ind.tolist()))

    remaining = list(range(n))
    achieved = 0.0
    choice: list[int] = []
    for r in range(n):
        chosen = None
        for c in remaining:
            if c == reference[r]:
                chosen = c
                break
            rest_cols = [x for x in remaining if x != c]
            sub = matrix[np.ix_(range(r + 1, n), rest_cols)]
            rest = _max_total(sub) if sub.size else 0.0
            if achieved + matrix[r, c] + rest >= total - tol:
                chosen = c
                sub_rows, sub_cols = linear_sum_assignment(sub, maximize=True)
                reference = {
                    r + 1 + sr: rest_cols[sc]
                    for sr, sc in zip(sub_rows.tolist(), sub_cols.tolist())
                }
                break
        assert chosen is not None
        achieved += matrix[r, chosen]
        remaining.remove(chosen)
        choice.append(chosen)
    return choice


def hungarian_assign(similarity) -> AssignmentResult:
    """Maximum-similarity one-to-one matching between two index sets.

    `similarity` is a (possibly rectangular, possibly empty) matrix with
    entries in [-1, 1]. Rows are sources, columns targets. Anything matched
    to internal padding comes back in the unmatched lists.
    """
    matrix = np.asarray(similarity, dtype=np.float64)
    if matrix.size == 0:
        rows = int(matrix.shape[0]) if matrix.ndim >= 1 else 0
        cols = int(matrix.shape[1]) if matrix.ndim == 2 else 0
        return AssignmentResult(
            pairs=(),
            unmatched_source=tuple(range(rows)),
            unmatched_target=tuple(range(cols)),
        )
    if matrix.ndim != 2:
        raise InvalidScoreError(f"similarity must be 2-D, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InvalidScoreError("similarity matrix contains non-finite entries")
    if matrix.min() < -1.0 or matrix.max() > 1.0:
        raise InvalidScoreError("similarity entries must lie in [-1, 1]")

    rows, cols = matrix.shape
    n = max(rows, cols)
    padded = np.full((n, n), DUMMY_SCORE, dtype=np.float64)
    padded[:rows, :cols] = matrix

    choice = _lexicographic_optimal(padded)
    pairs = []
    unmatched_source = []
    unmatched_target = set(range(cols))
    for r in range(rows):
        c = choice[r]
        if c < cols:
            pairs.append(AssignmentPair(source=r, target=c, score=float(matrix[r, c])))
            unmatched_target.discard(c)
        else:
            unmatched_source.append(r)
    return AssignmentResult(
        pairs=tuple(pairs),
        unmatched_source=tuple(unmatched_source),
        unmatched_target=tuple(sorted(unmatched_target)),
    )
