"""Bundled fixture data: grammar corpus and demo segment captions."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_path(name: str) -> Path:
    """Filesystem path of a bundled data file."""
    return Path(resources.files(__package__) / name)


def grammar_corpus_path() -> Path:
    return data_path("grammar_corpus.jsonl")


def demo_captions_path() -> Path:
    return data_path("demo_captions.jsonl")


def park_segments_path() -> Path:
    return data_path("park_segments.jsonl")
