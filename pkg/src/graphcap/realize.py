"""Deterministic template realizer: scene graph -> caption text.

A reference realization path that needs no trained decoder. One sentence per
connected component, components ordered by their maximum merge count (most
consolidated first). Within a component each edge renders as a clause
"<attrs> <subject> <relation> <attrs> <object>", clauses joined with "and";
an isolated node renders as "there is <attrs> <noun>". A node's first
mention is indefinite with its attributes spelled out; later mentions say
"the <noun>". Relations whose first word is a known verb conjugate to third
person ("cook in" -> "cooks in"); bare prepositions get a copula ("on" ->
"is on"). Output is lowercase with no trailing period, and re-parses under
the caption grammar.
"""

from __future__ import annotations

from .graph import ObjectNode, SceneGraph, canonicalize, connected_components
from .lexicon import BASE_TO_THIRD

_VOWELS = "aeiou"


def _article(word: str) -> str:
    return "an" if word[:1] in _VOWELS else "a"


def _mention(node: ObjectNode, seen: set[str]) -> str:
    if node.id in seen:
        return f"the {node.class_label}"
    seen.add(node.id)
    words = list(node.sorted_attributes()) + [node.class_label]
    return f"{_article(words[0])} {' '.join(words)}"


def _relation_phrase(relation: str) -> str:
    head, _, rest = relation.partition(" ")
    if head in BASE_TO_THIRD:
        conjugated = BASE_TO_THIRD[head]
        return f"{conjugated} {rest}".strip()
    return f"is {relation}"


def realize_template(graph: SceneGraph) -> str:
    """Render a caption for the graph; empty graph -> empty string."""
    graph = canonicalize(graph)
    if graph.is_empty():
        return ""
    nodes = {o.id: o for o in graph.objects}
    components = connected_components(graph)
    components.sort(
        key=lambda comp: (-max(nodes[nid].merge_count for nid in comp),
                          min(comp)),
    )
    seen: set[str] = set()
    sentences: list[str] = []
    for comp in components:
        members = set(comp)
        edges = [e for e in graph.edges if e.source in members]
        if not edges:
            node = nodes[comp[0]]
            sentences.append(f"there is {_mention(node, seen)}")
            continue
        clauses = []
        for e in edges:
            subject = _mention(nodes[e.source], seen)
            obj = _mention(nodes[e.target], seen)
            clauses.append(f"{subject} {_relation_phrase(e.relation)} {obj}")
        sentences.append(" and ".join(clauses))
    return ". ".join(sentences)
