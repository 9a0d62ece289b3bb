"""Scene graph data model: nodes, attributed edges, canonical form, hashing.

A scene graph is a directed labeled graph. Each object carries a class label
and an attribute set; each edge carries a relation label. Graphs are
immutable; every operation returns a new graph. The canonical form fixes
object order, edge order, and object ids so that two graphs with the same
content serialize to identical bytes no matter how they were assembled.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import GraphIntegrityError
from .lexicon import singularize

# sha256 of the canonical serialization of the empty graph; pinned by tests.
EMPTY_GRAPH_DIGEST = "207142fee7f281fae524e658d6081a23bbf07c7e278228dce8c5be2570de96fc"


def normalize_label(text: str) -> str:
    """Lowercase, collapse whitespace, and singularize table-listed nouns.

    Applied uniformly to class labels, attributes, and relation labels so all
    merging and matching happens over one stable string domain. Words absent
    from the bundled plural table pass through unchanged.
    """
    words = text.lower().split()
    return " ".join(singularize(w) for w in words)


@dataclass(frozen=True)
class ObjectNode:
    id: str
    class_label: str
    attributes: frozenset[str] = field(default_factory=frozenset)
    merge_count: int = 0

    def sorted_attributes(self) -> tuple[str, ...]:
        return tuple(sorted(self.attributes))

    def content_key(self) -> tuple:
        return (self.class_label, self.sorted_attributes(), self.merge_count)


@dataclass(frozen=True, order=True)
class Edge:
    source: str
    relation: str
    target: str

    @property
    def triple(self) -> tuple[str, str, str]:
        return (self.source, self.relation, self.target)


@dataclass(frozen=True)
class SceneGraph:
    objects: tuple[ObjectNode, ...] = ()
    edges: tuple[Edge, ...] = ()
    provenance: tuple[str, ...] = ()

    def object_by_id(self, node_id: str) -> ObjectNode:
        for obj in self.objects:
            if obj.id == node_id:
                return obj
        raise KeyError(node_id)

    def is_empty(self) -> bool:
        return not self.objects


def validate(graph: SceneGraph) -> None:
    """Raise GraphIntegrityError if any structural invariant is broken."""
    seen_ids: set[str] = set()
    for obj in graph.objects:
        if not obj.class_label:
            raise GraphIntegrityError(f"object {obj.id!r} has an empty class label")
        if obj.id in seen_ids:
            raise GraphIntegrityError(f"duplicate object id {obj.id!r}")
        seen_ids.add(obj.id)
        if obj.class_label in obj.attributes:
            raise GraphIntegrityError(
                f"object {obj.id!r} lists its class {obj.class_label!r} as an attribute"
            )
        if obj.merge_count < 0:
            raise GraphIntegrityError(f"object {obj.id!r} has negative merge count")
    seen_triples: set[tuple[str, str, str]] = set()
    for edge in graph.edges:
        if edge.source not in seen_ids or edge.target not in seen_ids:
            raise GraphIntegrityError(
                f"edge ({edge.source!r}, {edge.relation!r}, {edge.target!r}) "
                "references a missing object"
            )
        if edge.source == edge.target:
            raise GraphIntegrityError(
                f"self-loop on {edge.source!r} via {edge.relation!r}"
            )
        if not edge.relation:
            raise GraphIntegrityError(
                f"edge ({edge.source!r}, {edge.target!r}) has an empty relation"
            )
        if edge.triple in seen_triples:
            raise GraphIntegrityError(f"duplicate edge triple {edge.triple!r}")
        seen_triples.add(edge.triple)


def _refine_node_order(graph: SceneGraph) -> list[ObjectNode]:
    """Order objects by content, refined by neighborhood structure.

    Starts from (class, attributes, merge count) and iteratively folds in the
    multiset of (relation, neighbor rank) pairs, so nodes that differ anywhere
    in their reachable context sort apart regardless of insertion order. Nodes
    still tied after refinement are structurally interchangeable at this
    resolution; their relative order falls back to the incoming id.
    """
    out_ctx: dict[str, list[tuple[str, str]]] = {o.id: [] for o in graph.objects}
    in_ctx: dict[str, list[tuple[str, str]]] = {o.id: [] for o in graph.objects}
    for e in graph.edges:
        out_ctx[e.source].append((e.relation, e.target))
        in_ctx[e.target].append((e.relation, e.source))

    rank: dict[str, int] = {}
    order = sorted(set(o.content_key() for o in graph.objects))
    key_rank = {k: i for i, k in enumerate(order)}
    for o in graph.objects:
        rank[o.id] = key_rank[o.content_key()]

    for _ in range(len(graph.objects)):
        composite = {
            o.id: (
                rank[o.id],
                tuple(sorted((rel, rank[t]) for rel, t in out_ctx[o.id])),
                tuple(sorted((rel, rank[s]) for rel, s in in_ctx[o.id])),
            )
            for o in graph.objects
        }
        new_order = sorted(set(composite.values()))
        new_rank_of = {k: i for i, k in enumerate(new_order)}
        new_rank = {nid: new_rank_of[composite[nid]] for nid in rank}
        if new_rank == rank:
            break
        rank = new_rank

    return sorted(graph.objects, key=lambda o: (rank[o.id], o.id))


def canonicalize_with_mapping(graph: SceneGraph) -> tuple[SceneGraph, dict[str, str]]:
    """Canonicalize and also return the old-id -> new-id mapping."""
    validate(graph)
    ordered = _refine_node_order(graph)
    width = max(1, len(str(max(len(ordered) - 1, 0))))
    new_id = {obj.id: f"n{i:0{width}d}" for i, obj in enumerate(ordered)}
    objects = tuple(replace(obj, id=new_id[obj.id]) for obj in ordered)
    edges = tuple(
        sorted(
            {
                Edge(new_id[e.source], e.relation, new_id[e.target])
                for e in graph.edges
            }
        )
    )
    provenance = tuple(sorted(set(graph.provenance)))
    return SceneGraph(objects=objects, edges=edges, provenance=provenance), new_id


def canonicalize(graph: SceneGraph) -> SceneGraph:
    """Return the canonical form: deterministic object ids and ordering.

    Objects are ordered by (class label, attributes, merge count) refined by
    edge context, then renumbered n0, n1, ... (zero-padded); edges are
    rewritten and sorted by (source, relation, target); provenance is sorted
    and deduplicated. Idempotent, and insensitive to the insertion order of
    the input, so canonically equal graphs serialize to identical bytes.
    """
    return canonicalize_with_mapping(graph)[0]


def disjoint_union(a: SceneGraph, b: SceneGraph) -> SceneGraph:
    """Combine two graphs side by side, re-keying ids to avoid collisions.

    Nothing is merged: a node from each input stays a distinct node even when
    labels coincide. Provenance lists are concatenated.
    """
    mapping_a = {obj.id: f"u{i}" for i, obj in enumerate(a.objects)}
    offset = len(a.objects)
    mapping_b = {obj.id: f"u{i + offset}" for i, obj in enumerate(b.objects)}
    objects = tuple(replace(o, id=mapping_a[o.id]) for o in a.objects) + tuple(
        replace(o, id=mapping_b[o.id]) for o in b.objects
    )
    edges = tuple(
        Edge(mapping_a[e.source], e.relation, mapping_a[e.target]) for e in a.edges
    ) + tuple(Edge(mapping_b[e.source], e.relation, mapping_b[e.target]) for e in b.edges)
    return SceneGraph(
        objects=objects, edges=edges, provenance=a.provenance + b.provenance
    )


def graph_to_dict(graph: SceneGraph) -> dict:
    return {
        "objects": [
            {
                "id": o.id,
                "class": o.class_label,
                "attributes": list(o.sorted_attributes()),
                "merge_count": o.merge_count,
            }
            for o in graph.objects
        ],
        "edges": [
            {"src": e.source, "rel": e.relation, "dst": e.target} for e in graph.edges
        ],
        "provenance": list(graph.provenance),
    }


def graph_from_dict(data: Mapping) -> SceneGraph:
    try:
        objects = tuple(
            ObjectNode(
                id=str(o["id"]),
                class_label=str(o["class"]),
                attributes=frozenset(str(a) for a in o.get("attributes", [])),
                merge_count=int(o.get("merge_count", 0)),
            )
            for o in data["objects"]
        )
        edges = tuple(
            Edge(str(e["src"]), str(e["rel"]), str(e["dst"])) for e in data["edges"]
        )
        provenance = tuple(str(p) for p in data.get("provenance", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphIntegrityError(f"malformed graph document: {exc}") from exc
    graph = SceneGraph(objects=objects, edges=edges, provenance=provenance)
    validate(graph)
    return graph


def serialize_canonical(graph: SceneGraph) -> bytes:
    """Compact canonical JSON bytes of canonicalize(graph)."""
    doc = graph_to_dict(canonicalize(graph))
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def graph_hash(graph: SceneGraph) -> str:
    """sha256 hex digest of the canonical serialization.

    Canonically equal graphs hash equal; distinct canonical forms collide only
    with sha256 probability (~2^-128 for birthday collisions), which is
    negligible for tie-breaking use.
    """
    return hashlib.sha256(serialize_canonical(graph)).hexdigest()


def graphs_equal(a: SceneGraph, b: SceneGraph) -> bool:
    return serialize_canonical(a) == serialize_canonical(b)


def build_graph(
    objects: Sequence[tuple[str, Iterable[str]]],
    edges: Sequence[tuple[int, str, int]] = (),
    provenance: Sequence[str] = (),
    merge_counts: Sequence[int] | None = None,
    canonical: bool = True,
) -> SceneGraph:
    """Assemble a graph from (class, attributes) specs and index-based edges.

    Labels are normalized, attributes deduplicated (and never equal to the
    class label), duplicate edge triples collapsed. Mostly a convenience for
    parsers, fixtures, and tests.
    """
    nodes = []
    for i, (label, attrs) in enumerate(objects):
        cls = normalize_label(label)
        attributes = frozenset(normalize_label(a) for a in attrs) - {cls}
        count = merge_counts[i] if merge_counts is not None else 0
        nodes.append(ObjectNode(id=f"b{i}", class_label=cls, attributes=attributes,
                                merge_count=count))
    edge_set = {
        Edge(nodes[s].id, normalize_label(rel), nodes[t].id) for s, rel, t in edges
    }
    graph = SceneGraph(
        objects=tuple(nodes),
        edges=tuple(sorted(edge_set)),
        provenance=tuple(provenance),
    )
    return canonicalize(graph) if canonical else graph


def adjacency(graph: SceneGraph) -> dict[str, set[str]]:
    """Undirected neighbor map over object ids."""
    neighbors: dict[str, set[str]] = {o.id: set() for o in graph.objects}
    for e in graph.edges:
        neighbors[e.source].add(e.target)
        neighbors[e.target].add(e.source)
    return neighbors


def degrees(graph: SceneGraph) -> dict[str, int]:
    """Total degree (in + out) per object id."""
    deg = {o.id: 0 for o in graph.objects}
    for e in graph.edges:
        deg[e.source] += 1
        deg[e.target] += 1
    return deg


def connected_components(graph: SceneGraph) -> list[list[str]]:
    """Weakly connected components as lists of ids in canonical object order."""
    neighbors = adjacency(graph)
    position = {o.id: i for i, o in enumerate(graph.objects)}
    seen: set[str] = set()
    components: list[list[str]] = []
    for obj in graph.objects:
        if obj.id in seen:
            continue
        stack = [obj.id]
        comp: set[str] = set()
        while stack:
            nid = stack.pop()
            if nid in comp:
                continue
            comp.add(nid)
            stack.extend(neighbors[nid] - comp)
        seen |= comp
        components.append(sorted(comp, key=position.__getitem__))
    return components
