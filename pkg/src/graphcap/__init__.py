"""graphcap: scene-graph consolidation for segment-captioned videos.

Parse per-segment captions into scene graphs, consolidate them into one
video-level graph by optimal object matching and iterative pairwise merging,
extract prioritized subgraphs, and emit graph-to-text encoder inputs and
deterministic template captions.
"""

from .assignment import AssignmentPair, AssignmentResult, hungarian_assign
from .consolidate import (
    ConsolidationConfig,
    MergeEvent,
    MergeTrace,
    ObjectMergeRecord,
    consolidate,
    extract_prioritized_subgraph,
    match_objects,
    merge_pair,
    replay_trace,
)
from .dot import to_dot
from .embedding import (
    EmbeddingVector,
    FileBackedProvider,
    HashedContextProvider,
    ProviderDescriptor,
    ProviderKind,
    cosine,
    embed_graph,
    embed_objects,
    hashed_text_vector,
    object_signature,
    provider_from_spec,
)
from .encoder import (
    PARAGRAPH_PARAMS,
    SHORT_CAPTION_PARAMS,
    DecodeParams,
    GraphEncoderInput,
    MaskPolicy,
    Token,
    export_decoder_request,
    linearize,
)
from .errors import (
    ConfigError,
    DegenerateVectorError,
    EmptyGraphError,
    EmptyInputError,
    GraphcapError,
    GraphIntegrityError,
    InputError,
    InputSizeError,
    InvalidScoreError,
    LoopGuardError,
    MissingEmbeddingError,
)
from .graph import (
    EMPTY_GRAPH_DIGEST,
    Edge,
    ObjectNode,
    SceneGraph,
    build_graph,
    canonicalize,
    disjoint_union,
    graph_from_dict,
    graph_hash,
    graph_to_dict,
    graphs_equal,
    normalize_label,
    serialize_canonical,
    validate,
)
from .parsing import (
    SegmentCaptionRecord,
    SemanticIR,
    ir_to_graph,
    iter_segment_records,
    parse_caption,
    parse_segment,
)
from .realize import realize_template
from .scoring import PRFScore, TokenEmbeddingSet, embed_caption, score_prf, tokenize_caption

__version__ = "0.1.0"

__all__ = [
    "AssignmentPair",
    "AssignmentResult",
    "ConfigError",
    "ConsolidationConfig",
    "DecodeParams",
    "DegenerateVectorError",
    "EMPTY_GRAPH_DIGEST",
    "Edge",
    "EmbeddingVector",
    "EmptyGraphError",
    "EmptyInputError",
    "FileBackedProvider",
    "GraphcapError",
    "GraphEncoderInput",
    "GraphIntegrityError",
    "HashedContextProvider",
    "InputError",
    "InputSizeError",
    "InvalidScoreError",
    "LoopGuardError",
    "MaskPolicy",
    "MergeEvent",
    "MergeTrace",
    "MissingEmbeddingError",
    "ObjectMergeRecord",
    "ObjectNode",
    "PARAGRAPH_PARAMS",
    "PRFScore",
    "ProviderDescriptor",
    "ProviderKind",
    "SHORT_CAPTION_PARAMS",
    "SceneGraph",
    "SegmentCaptionRecord",
    "SemanticIR",
    "Token",
    "TokenEmbeddingSet",
    "build_graph",
    "canonicalize",
    "consolidate",
    "cosine",
    "disjoint_union",
    "embed_caption",
    "embed_graph",
    "embed_objects",
    "export_decoder_request",
    "extract_prioritized_subgraph",
    "graph_from_dict",
    "graph_hash",
    "graph_to_dict",
    "graphs_equal",
    "hashed_text_vector",
    "hungarian_assign",
    "ir_to_graph",
    "iter_segment_records",
    "linearize",
    "match_objects",
    "merge_pair",
    "normalize_label",
    "object_signature",
    "parse_caption",
    "parse_segment",
    "provider_from_spec",
    "realize_template",
    "replay_trace",
    "score_prf",
    "serialize_canonical",
    "to_dot",
    "tokenize_caption",
    "validate",
]
