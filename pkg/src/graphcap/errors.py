"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: input problems exit 2, config
problems exit 3, anything signalling a broken internal invariant exits 4.
"""

from __future__ import annotations


class GraphcapError(Exception):
    """Base class for all package errors."""


class InputError(GraphcapError):
    """Bad user-supplied data (captions, JSONL records, files)."""


class EmptyInputError(InputError):
    """Input that is empty where content is required."""


class InputSizeError(InputError):
    """Input exceeding a documented size cap."""


class ConfigError(GraphcapError):
    """Invalid configuration value or combination."""


class GraphIntegrityError(GraphcapError):
    """Structural invariant of a scene graph is violated."""


class MissingEmbeddingError(GraphcapError):
    """File-backed provider has no entry for an object signature."""


class DegenerateVectorError(GraphcapError):
    """Operation on a zero-norm embedding vector."""


class EmptyGraphError(GraphcapError):
    """Graph-level operation applied to a graph with no objects."""


class InvalidScoreError(GraphcapError):
    """Similarity matrix entry outside the expected domain."""


class LoopGuardError(GraphcapError):
    """Consolidation exceeded its iteration safety cap."""
