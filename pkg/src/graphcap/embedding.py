"""Embedding providers for objects, whole graphs, and caption tokens.

Two interchangeable providers feed the matcher:

* hashed-context (default): a deterministic structural embedding. An object's
  vector is the normalized weighted sum of hashed character-trigram features
  of its class label, hashed features of each attribute (weight 0.5), and
  hashed features of each (relation, neighbor class) context pair
  (weight 0.25). No training, bitwise reproducible everywhere.
* file-backed: a lookup table keyed by object signature, so vectors exported
  from any trained encoder can be injected without code changes.

Graph-level vectors are the L2-normalized mean of the normalized object
vectors; permutation-invariant by construction.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    DegenerateVectorError,
    EmptyGraphError,
    MissingEmbeddingError,
)
from .graph import SceneGraph

DEFAULT_DIMENSION = 256

_CLASS_WEIGHT = 1.0
_ATTRIBUTE_WEIGHT = 0.5
_CONTEXT_WEIGHT = 0.25


class ProviderKind(str, Enum):
    HASHED_CONTEXT = "hashed-context"
    FILE_BACKED = "file-backed"


@dataclass(frozen=True)
class ProviderDescriptor:
    kind: ProviderKind
    dimension: int
    version: str

    def __post_init__(self) -> None:
        if self.dimension <= 0:
            raise ConfigError(f"embedding dimension must be positive: {self.dimension}")


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    norm: float

    @classmethod
    def of(cls, values: np.ndarray) -> "EmbeddingVector":
        arr = np.asarray(values, dtype=np.float64)
        arr.setflags(write=False)
        return cls(values=arr, norm=float(np.linalg.norm(arr)))

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])

    def normalized(self) -> "EmbeddingVector":
        if self.norm == 0.0:
            raise DegenerateVectorError("cannot normalize a zero vector")
        return EmbeddingVector.of(self.values / self.norm)


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity in [-1, 1]; exact 1.0 for elementwise-equal vectors."""
    if a.dimension != b.dimension:
        raise DegenerateVectorError(
            f"dimension mismatch: {a.dimension} vs {b.dimension}"
        )
    if a.norm == 0.0 or b.norm == 0.0:
        raise DegenerateVectorError("cosine of a zero-norm vector is undefined")
    if np.array_equal(a.values, b.values):
        return 1.0
    value = float(np.dot(a.values, b.values) / (a.norm * b.norm))
    return max(-1.0, min(1.0, value))


def _feature_slot(feature: str, dimension: int) -> tuple[int, float]:
    digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=16).digest()
    index = int.from_bytes(digest[:8], "big") % dimension
    sign = 1.0 if digest[8] % 2 == 0 else -1.0
    return index, sign


def _accumulate(vec: np.ndarray, feature: str, weight: float) -> None:
    index, sign = _feature_slot(feature, vec.shape[0])
    vec[index] += weight * sign


def _trigrams(text: str) -> list[str]:
    padded = f"#{text}#"
    return [padded[i : i + 3] for i in range(len(padded) - 2)]


def hashed_text_vector(text: str, dimension: int = DEFAULT_DIMENSION) -> EmbeddingVector:
    """Normalized hashed character-trigram vector for a bare string."""
    vec = np.zeros(dimension, dtype=np.float64)
    for tg in _trigrams(text):
        _accumulate(vec, "t3:" + tg, 1.0)
    out = EmbeddingVector.of(vec)
    if out.norm == 0.0:
        raise DegenerateVectorError(f"hashed features cancelled for {text!r}")
    return out.normalized()


def object_signature(class_label: str, attributes, dimension: int) -> str:
    """Lookup key for file-backed providers: "class|attr1,attr2|dim"."""
    return f"{class_label}|{','.join(sorted(attributes))}|{dimension}"


class HashedContextProvider:
    """Default deterministic provider; see module docstring for the recipe."""

    VERSION = "hashed-context/1"

    def __init__(self, dimension: int = DEFAULT_DIMENSION):
        self.descriptor = ProviderDescriptor(
            kind=ProviderKind.HASHED_CONTEXT, dimension=dimension, version=self.VERSION
        )

    def token_vector(self, token: str) -> EmbeddingVector:
        return hashed_text_vector(token, self.descriptor.dimension)

    def object_vectors(self, graph: SceneGraph) -> list[EmbeddingVector]:
        dim = self.descriptor.dimension
        context: dict[str, list[str]] = {o.id: [] for o in graph.objects}
        classes = {o.id: o.class_label for o in graph.objects}
        for e in graph.edges:
            context[e.source].append(f"ctx:{e.relation}|{classes[e.target]}")
            context[e.target].append(f"ctx:{e.relation}|{classes[e.source]}")
        vectors = []
        for obj in graph.objects:
            vec = np.zeros(dim, dtype=np.float64)
            for tg in _trigrams(obj.class_label):
                _accumulate(vec, "c3:" + tg, _CLASS_WEIGHT)
            for attr in obj.sorted_attributes():
                _accumulate(vec, "attr:" + attr, _ATTRIBUTE_WEIGHT)
            for feature in sorted(context[obj.id]):
                _accumulate(vec, feature, _CONTEXT_WEIGHT)
            out = EmbeddingVector.of(vec)
            if out.norm == 0.0:
                raise DegenerateVectorError(
                    f"hashed features cancelled for object {obj.id!r}"
                )
            vectors.append(out.normalized())
        return vectors


class FileBackedProvider:
    """Vectors loaded from a JSON sidecar {object signature -> float array}.

    Accepts either a flat mapping or {"dimension": ..., "vectors": {...}}.
    Raises MissingEmbeddingError when a graph object has no table entry.
    """

    def __init__(self, path: str | Path):
        raw = Path(path).read_bytes()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"embedding sidecar {path}: invalid JSON") from exc
        table = doc.get("vectors", doc) if isinstance(doc, dict) else None
        if not isinstance(table, dict) or not table:
            raise ConfigError(f"embedding sidecar {path}: expected a non-empty map")
        self._table = {
            key: EmbeddingVector.of(np.asarray(val, dtype=np.float64))
            for key, val in table.items()
        }
        dims = {v.dimension for v in self._table.values()}
        if len(dims) != 1:
            raise ConfigError(f"embedding sidecar {path}: mixed dimensions {dims}")
        version = "file/" + hashlib.sha256(raw).hexdigest()[:12]
        self.descriptor = ProviderDescriptor(
            kind=ProviderKind.FILE_BACKED, dimension=dims.pop(), version=version
        )

    def _lookup(self, sig: str, what: str) -> EmbeddingVector:
        if sig not in self._table:
            raise MissingEmbeddingError(f"no embedding for {what} (signature {sig!r})")
        vec = self._table[sig]
        if vec.norm == 0.0:
            raise DegenerateVectorError(f"zero vector for signature {sig!r}")
        return vec.normalized()

    def token_vector(self, token: str) -> EmbeddingVector:
        sig = object_signature(token, (), self.descriptor.dimension)
        return self._lookup(sig, f"token {token!r}")

    def object_vectors(self, graph: SceneGraph) -> list[EmbeddingVector]:
        vectors = []
        for obj in graph.objects:
            sig = object_signature(
                obj.class_label, obj.attributes, self.descriptor.dimension
            )
            vectors.append(self._lookup(sig, f"object {obj.id!r}"))
        return vectors


Provider = HashedContextProvider | FileBackedProvider


def provider_from_spec(spec: str, dimension: int = DEFAULT_DIMENSION) -> Provider:
    """Build a provider from a CLI/config string: "hashed" or "file:<path>"."""
    if spec == "hashed":
        return HashedContextProvider(dimension=dimension)
    if spec.startswith("file:"):
        return FileBackedProvider(spec[len("file:") :])
    raise ConfigError(f"unknown provider spec {spec!r}; use 'hashed' or 'file:<path>'")


def embed_objects(graph: SceneGraph, provider: Provider) -> list[EmbeddingVector]:
    """One unit vector per object, aligned with canonical object order."""
    return provider.object_vectors(graph)


def embed_graph(graph: SceneGraph, provider: Provider) -> EmbeddingVector:
    """L2-normalized mean of the normalized object vectors."""
    if graph.is_empty():
        raise EmptyGraphError("cannot embed a graph with no objects")
    vectors = embed_objects(graph, provider)
    mean = np.mean([v.values for v in vectors], axis=0)
    out = EmbeddingVector.of(mean)
    if out.norm == 0.0:
        raise DegenerateVectorError("object vectors cancelled in the mean")
    return out.normalized()
