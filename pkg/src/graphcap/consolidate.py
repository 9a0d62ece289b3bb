"""Iterative scene-graph consolidation and prioritized subgraph extraction.

Given per-segment graphs, repeatedly pick the two most similar graphs (by
cosine of their pooled embeddings), match their objects one-to-one with the
Hungarian step, merge every matched pair whose similarity strictly exceeds
the threshold, and put the merged graph back, until a single video-level
graph remains.

Merging a matched object pair keeps the class label of the more consolidated
parent (higher merge count; ties to the lexicographically smaller label),
unions the attribute sets, sums the parents' merge counts plus one, and
redirects every edge incident to either parent onto the merged node. Both
incoming and outgoing edges of both parents are redirected; self-loops
created by rewiring are dropped and duplicate triples collapse.

Pair selection ties break on content hashes rather than list positions, so
consolidation is a function of the graph multiset: permuting the input list
cannot change the output bytes. Every object merge is recorded in a trace
that can be replayed against the original inputs to reproduce the result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .assignment import AssignmentPair, AssignmentResult, hungarian_assign
from .embedding import (
    DEFAULT_DIMENSION,
    Provider,
    cosine,
    embed_graph,
    embed_objects,
    provider_from_spec,
)
from .errors import ConfigError, GraphIntegrityError, LoopGuardError
from .graph import (
    Edge,
    ObjectNode,
    SceneGraph,
    canonicalize,
    canonicalize_with_mapping,
    degrees,
    disjoint_union,
    graph_hash,
)

DEFAULT_TAU = 0.9
SHORT_CAPTION_TOP_K = 1


@dataclass(frozen=True)
class ConsolidationConfig:
    tau: float = DEFAULT_TAU
    top_k: int | None = None
    provider: Provider = None  # type: ignore[assignment]
    max_iterations: int = 100_000

    def __post_init__(self) -> None:
        if not (0.0 < self.tau <= 1.0):
            raise ConfigError(f"tau must be in (0, 1], got {self.tau}")
        if self.top_k is not None and self.top_k < 1:
            raise ConfigError(f"top_k must be >= 1, got {self.top_k}")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be >= 1")
        if self.provider is None:
            from .embedding import HashedContextProvider

            object.__setattr__(self, "provider", HashedContextProvider())

    @classmethod
    def from_file(cls, path: str | Path) -> "ConsolidationConfig":
        """Load from a JSON config with keys tau, top_k, provider.kind/path."""
        try:
            doc = json.loads(Path(path).read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path}: invalid JSON") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"config {path}: expected a JSON object")
        tau = doc.get("tau", DEFAULT_TAU)
        top_k = doc.get("top_k")
        if not isinstance(tau, (int, float)):
            raise ConfigError(f"config {path}: tau must be a number")
        provider_doc = doc.get("provider", {})
        kind = provider_doc.get("kind", "hashed")
        if kind in ("hashed", "hashed-context"):
            spec = "hashed"
        elif kind in ("file", "file-backed"):
            if "path" not in provider_doc:
                raise ConfigError(f"config {path}: file provider needs a path")
            spec = "file:" + str(provider_doc["path"])
        else:
            raise ConfigError(f"config {path}: unknown provider kind {kind!r}")
        dimension = provider_doc.get("dimension", DEFAULT_DIMENSION)
        return cls(
            tau=float(tau),
            top_k=top_k,
            provider=provider_from_spec(spec, dimension=dimension),
        )


@dataclass(frozen=True)
class ObjectMergeRecord:
    source_index: int
    target_index: int
    score: float
    source_class: str
    source_attributes: tuple[str, ...]
    source_merge_count: int
    target_class: str
    target_attributes: tuple[str, ...]
    target_merge_count: int
    merged_id: str
    merged_class: str
    merged_attributes: tuple[str, ...]
    merged_merge_count: int


@dataclass(frozen=True)
class MergeEvent:
    source_digest: str
    target_digest: str
    result_digest: str
    merges: tuple[ObjectMergeRecord, ...] = ()


@dataclass(frozen=True)
class MergeTrace:
    events: tuple[MergeEvent, ...] = ()

    def object_merge_count(self) -> int:
        return sum(len(event.merges) for event in self.events)

    def to_jsonl(self) -> str:
        lines = []
        for event in self.events:
            doc = {
                "source_digest": event.source_digest,
                "target_digest": event.target_digest,
                "result_digest": event.result_digest,
                "merges": [
                    {
                        "source_index": m.source_index,
                        "target_index": m.target_index,
                        "score": m.score,
                        "source_class": m.source_class,
                        "source_attributes": list(m.source_attributes),
                        "source_merge_count": m.source_merge_count,
                        "target_class": m.target_class,
                        "target_attributes": list(m.target_attributes),
                        "target_merge_count": m.target_merge_count,
                        "merged_id": m.merged_id,
                        "merged_class": m.merged_class,
                        "merged_attributes": list(m.merged_attributes),
                        "merged_merge_count": m.merged_merge_count,
                    }
                    for m in event.merges
                ],
            }
            lines.append(json.dumps(doc, ensure_ascii=False, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_jsonl(cls, text: str) -> "MergeTrace":
        events = []
        for line in text.splitlines():
            if not line.strip():
                continue
            doc = json.loads(line)
            merges = tuple(
                ObjectMergeRecord(
                    source_index=m["source_index"],
                    target_index=m["target_index"],
                    score=m["score"],
                    source_class=m["source_class"],
                    source_attributes=tuple(m["source_attributes"]),
                    source_merge_count=m["source_merge_count"],
                    target_class=m["target_class"],
                    target_attributes=tuple(m["target_attributes"]),
                    target_merge_count=m["target_merge_count"],
                    merged_id=m["merged_id"],
                    merged_class=m["merged_class"],
                    merged_attributes=tuple(m["merged_attributes"]),
                    merged_merge_count=m["merged_merge_count"],
                )
                for m in doc["merges"]
            )
            events.append(
                MergeEvent(
                    source_digest=doc["source_digest"],
                    target_digest=doc["target_digest"],
                    result_digest=doc["result_digest"],
                    merges=merges,
                )
            )
        return cls(events=tuple(events))


def match_objects(
    gs: SceneGraph, gt: SceneGraph, cfg: ConsolidationConfig
) -> AssignmentResult:
    """Hungarian matching of the two object sets by embedding cosine.

    Indices in the result refer to canonical object order of each graph. The
    valid-match set is recovered with result.valid_pairs(cfg.tau).
    """
    gs = canonicalize(gs)
    gt = canonicalize(gt)
    if gs.is_empty() or gt.is_empty():
        return hungarian_assign(np.zeros((len(gs.objects), len(gt.objects))))
    vs = embed_objects(gs, cfg.provider)
    vt = embed_objects(gt, cfg.provider)
    similarity = np.array([[cosine(a, b) for b in vt] for a in vs], dtype=np.float64)
    return hungarian_assign(similarity)


def _merged_class(p: ObjectNode, q: ObjectNode) -> str:
    """Class of the more consolidated parent; ties to the smaller label."""
    if p.merge_count != q.merge_count:
        return p.class_label if p.merge_count > q.merge_count else q.class_label
    return min(p.class_label, q.class_label)


def _apply_pair_merge(
    gs: SceneGraph, gt: SceneGraph, valid: Sequence[AssignmentPair]
) -> tuple[SceneGraph, tuple[ObjectMergeRecord, ...]]:
    """Merge canonical gs and gt over the given already-validated pairs."""
    union = disjoint_union(gs, gt)
    offset = len(gs.objects)
    redirect: dict[str, str] = {}
    merged_nodes: list[ObjectNode] = []
    staged: list[dict] = []
    for k, pair in enumerate(sorted(valid, key=lambda p: (p.source, p.target))):
        if not (0 <= pair.source < offset) or not (
            0 <= pair.target < len(gt.objects)
        ):
            raise GraphIntegrityError(
                f"match ({pair.source}, {pair.target}) is out of range"
            )
        p = gs.objects[pair.source]
        q = gt.objects[pair.target]
        cls = _merged_class(p, q)
        attributes = (p.attributes | q.attributes) - {cls}
        node = ObjectNode(
            id=f"m{k}",
            class_label=cls,
            attributes=attributes,
            merge_count=p.merge_count + q.merge_count + 1,
        )
        merged_nodes.append(node)
        redirect[union.objects[pair.source].id] = node.id
        redirect[union.objects[offset + pair.target].id] = node.id
        staged.append({"pair": pair, "p": p, "q": q, "node": node})

    kept = tuple(o for o in union.objects if o.id not in redirect) + tuple(merged_nodes)
    rewired = {
        Edge(redirect.get(e.source, e.source), e.relation, redirect.get(e.target, e.target))
        for e in union.edges
    }
    edges = tuple(sorted(e for e in rewired if e.source != e.target))
    merged_graph = SceneGraph(
        objects=kept, edges=edges, provenance=union.provenance
    )
    canonical, id_map = canonicalize_with_mapping(merged_graph)
    records = tuple(
        ObjectMergeRecord(
            source_index=s["pair"].source,
            target_index=s["pair"].target,
            score=s["pair"].score,
            source_class=s["p"].class_label,
            source_attributes=s["p"].sorted_attributes(),
            source_merge_count=s["p"].merge_count,
            target_class=s["q"].class_label,
            target_attributes=s["q"].sorted_attributes(),
            target_merge_count=s["q"].merge_count,
            merged_id=id_map[s["node"].id],
            merged_class=s["node"].class_label,
            merged_attributes=s["node"].sorted_attributes(),
            merged_merge_count=s["node"].merge_count,
        )
        for s in staged
    )
    return canonical, records


def merge_pair(
    gs: SceneGraph,
    gt: SceneGraph,
    matches: AssignmentResult,
    cfg: ConsolidationConfig,
) -> tuple[SceneGraph, MergeTrace]:
    """Merge two graphs over the valid matches (score strictly above tau).

    With no valid matches the result is exactly the disjoint union (in
    canonical form). Provenance lists concatenate.
    """
    gs = canonicalize(gs)
    gt = canonicalize(gt)
    valid = matches.valid_pairs(cfg.tau)
    merged, records = _apply_pair_merge(gs, gt, valid)
    event = MergeEvent(
        source_digest=graph_hash(gs),
        target_digest=graph_hash(gt),
        result_digest=graph_hash(merged),
        merges=records,
    )
    return merged, MergeTrace(events=(event,))


def consolidate(
    graphs: Iterable[SceneGraph], cfg: ConsolidationConfig | None = None
) -> tuple[SceneGraph, MergeTrace]:
    """Reduce per-segment graphs to one unified graph plus its merge trace.

    Empty graphs are dropped up front; if everything is empty the result is
    the empty graph. Each round embeds the working graphs, picks the pair
    with maximum cosine (ties by content hash), merges it, and repeats until
    one graph remains.
    """
    cfg = cfg or ConsolidationConfig()
    working = [canonicalize(g) for g in graphs if not g.is_empty()]
    if not working:
        return SceneGraph(), MergeTrace()
    items = sorted(((graph_hash(g), g) for g in working), key=lambda t: t[0])
    events: list[MergeEvent] = []
    iterations = 0
    while len(items) > 1:
        iterations += 1
        if iterations > cfg.max_iterations:
            raise LoopGuardError(
                f"consolidation exceeded {cfg.max_iterations} iterations"
            )
        vectors = [embed_graph(g, cfg.provider) for _, g in items]
        best_key = None
        best_pair = (0, 1)
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                key = (-cosine(vectors[i], vectors[j]), items[i][0], items[j][0])
                if best_key is None or key < best_key:
                    best_key = key
                    best_pair = (i, j)
        i, j = best_pair
        gs, gt = items[i][1], items[j][1]
        matches = match_objects(gs, gt, cfg)
        merged, trace = merge_pair(gs, gt, matches, cfg)
        events.extend(trace.events)
        del items[j], items[i]
        entry = (graph_hash(merged), merged)
        items.append(entry)
        items.sort(key=lambda t: t[0])
    return items[0][1], MergeTrace(events=tuple(events))


def replay_trace(
    graphs: Iterable[SceneGraph], trace: MergeTrace
) -> SceneGraph:
    """Re-apply a recorded trace to the original inputs.

    Replays each event by digest lookup and the recorded matched pairs,
    verifying every intermediate result digest. Raises GraphIntegrityError
    if the trace does not correspond to the inputs.
    """
    pool: dict[str, list[SceneGraph]] = {}
    for g in graphs:
        g = canonicalize(g)
        if g.is_empty():
            continue
        pool.setdefault(graph_hash(g), []).append(g)

    def take(digest: str) -> SceneGraph:
        bucket = pool.get(digest)
        if not bucket:
            raise GraphIntegrityError(f"trace references unknown graph {digest[:12]}")
        return bucket.pop()

    for event in trace.events:
        gs = take(event.source_digest)
        gt = take(event.target_digest)
        pairs = [
            AssignmentPair(m.source_index, m.target_index, m.score)
            for m in event.merges
        ]
        merged, _ = _apply_pair_merge(gs, gt, pairs)
        if graph_hash(merged) != event.result_digest:
            raise GraphIntegrityError("trace replay diverged from recorded digest")
        pool.setdefault(event.result_digest, []).append(merged)

    remaining = [g for bucket in pool.values() for g in bucket]
    if not remaining:
        return SceneGraph()
    if len(remaining) != 1:
        raise GraphIntegrityError(
            f"trace replay left {len(remaining)} graphs instead of one"
        )
    return remaining[0]


def extract_prioritized_subgraph(graph: SceneGraph, k: int) -> SceneGraph:
    """Neighborhood of the k highest-merge-count nodes.

    Nodes rank by (merge count desc, degree desc, class asc, id asc). The
    output keeps the selected nodes, every edge touching one of them, and
    those edges' endpoints. k at or above the node count returns the whole
    graph.
    """
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    graph = canonicalize(graph)
    if k >= len(graph.objects):
        return graph
    deg = degrees(graph)
    ranked = sorted(
        graph.objects,
        key=lambda o: (-o.merge_count, -deg[o.id], o.class_label, o.id),
    )
    selected = {o.id for o in ranked[:k]}
    edges = tuple(
        e for e in graph.edges if e.source in selected or e.target in selected
    )
    keep = set(selected)
    for e in edges:
        keep.add(e.source)
        keep.add(e.target)
    objects = tuple(o for o in graph.objects if o.id in keep)
    return canonicalize(
        SceneGraph(objects=objects, edges=edges, provenance=graph.provenance)
    )
