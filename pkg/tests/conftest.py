"""Shared fixtures: corpus loading and random graph generation."""

from __future__ import annotations

import json

import numpy as np
import pytest

from graphcap import SceneGraph, build_graph
from graphcap.data import grammar_corpus_path

NOUNS = [
    "man", "woman", "dog", "cat", "ball", "tree", "bench", "kitchen",
    "pot", "car", "bird", "table",
]
ADJECTIVES = ["red", "blue", "old", "young", "small", "tall", "brown", "shiny"]
RELATIONS = ["hold", "watch", "chase", "on", "near", "in", "ride", "push"]


def load_corpus() -> list[dict]:
    lines = grammar_corpus_path().read_text(encoding="utf-8").splitlines()
    return [json.loads(line) for line in lines if line.strip()]


def corpus_graph(doc: dict) -> SceneGraph:
    return build_graph(
        [(head, mods) for head, mods in doc["entities"]],
        [(s, p, o) for s, p, o in doc["relations"]],
    )


def random_graph(rng: np.random.Generator, max_objects: int = 8) -> SceneGraph:
    n = int(rng.integers(1, max_objects + 1))
    objects = []
    for _ in range(n):
        cls = NOUNS[rng.integers(0, len(NOUNS))]
        k = int(rng.integers(0, 3))
        attrs = sorted({ADJECTIVES[rng.integers(0, len(ADJECTIVES))] for _ in range(k)})
        objects.append((cls, attrs))
    edges = set()
    if n > 1:
        for _ in range(int(rng.integers(0, 2 * n))):
            s = int(rng.integers(0, n))
            t = int(rng.integers(0, n))
            if s != t:
                edges.add((s, RELATIONS[rng.integers(0, len(RELATIONS))], t))
    return build_graph(objects, sorted(edges))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def corpus() -> list[dict]:
    return load_corpus()
