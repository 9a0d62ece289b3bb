"""Embedding-based caption scoring (precision / recall / F over token sets).

For reference token embeddings Z and candidate token embeddings C (all
unit-normalized): precision is the mean over candidate tokens of their best
cosine against the reference set, recall is the mean over reference tokens
of their best cosine against the candidate set, and F is the harmonic mean
of the two. F is reported as 0 with a degenerate flag when P + R is zero.

Token order never matters. With the default hashed provider the scores are
deterministic; a file-backed provider swaps in trained vectors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .embedding import (
    DEFAULT_DIMENSION,
    EmbeddingVector,
    Provider,
    cosine,
)
from .errors import DegenerateVectorError, EmptyInputError

_TOKEN_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class TokenEmbeddingSet:
    tokens: tuple[str, ...]
    vectors: tuple[EmbeddingVector, ...]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.vectors):
            raise ValueError(
                f"{len(self.tokens)} tokens vs {len(self.vectors)} vectors"
            )
        for token, vec in zip(self.tokens, self.vectors):
            if vec.norm == 0.0:
                raise DegenerateVectorError(f"zero-norm vector for token {token!r}")


@dataclass(frozen=True)
class PRFScore:
    precision: float
    recall: float
    f1: float
    degenerate: bool = False


def tokenize_caption(text: str) -> list[str]:
    """Lowercased tokens split on whitespace and punctuation."""
    return _TOKEN_RE.findall(text.lower())


def embed_caption(
    text: str, provider: Provider | None = None, dimension: int = DEFAULT_DIMENSION
) -> TokenEmbeddingSet:
    """Tokenize a caption and embed each token with the given provider."""
    tokens = tokenize_caption(text)
    if not tokens:
        raise EmptyInputError("caption has no tokens")
    if provider is None:
        from .embedding import HashedContextProvider

        provider = HashedContextProvider(dimension=dimension)
    vectors = tuple(provider.token_vector(tok) for tok in tokens)
    return TokenEmbeddingSet(tokens=tuple(tokens), vectors=vectors)


def score_prf(reference: TokenEmbeddingSet, candidate: TokenEmbeddingSet) -> PRFScore:
    """Greedy-max token similarity scores; both sets must be non-empty."""
    if not reference.tokens or not candidate.tokens:
        raise EmptyInputError("cannot score an empty token set")
    ref = [v.normalized() for v in reference.vectors]
    cand = [v.normalized() for v in candidate.vectors]
    sim = [[cosine(r, c) for c in cand] for r in ref]
    precision = sum(max(sim[i][j] for i in range(len(ref))) for j in range(len(cand)))
    precision /= len(cand)
    recall = sum(max(sim[i][j] for j in range(len(cand))) for i in range(len(ref)))
    recall /= len(ref)
    if precision + recall == 0.0:
        return PRFScore(precision=precision, recall=recall, f1=0.0, degenerate=True)
    f1 = 2.0 * precision * recall / (precision + recall)
    return PRFScore(precision=precision, recall=recall, f1=f1)
