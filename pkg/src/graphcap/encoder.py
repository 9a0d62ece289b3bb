"""Graph-to-text encoder input: token sequence plus edge-restricted mask.

A graph linearizes to one token per object class, one per attribute, one per
edge relation (multi-word labels stay single tokens; subword splitting is the
downstream model's business), and a trailing global token. The boolean
attention mask restricts propagation to the graph structure:

* every token attends to itself; the mask is symmetric
* the global token attends to and from everything, bridging disconnected
  components
* attribute tokens attend to their owner's class token only
* relation tokens attend to both endpoint class tokens
* class tokens of two different objects attend to each other only when an
  edge connects the objects (in either direction)

Whether attribute tokens may also reach their object's relation tokens is a
policy knob, off by default.
"""

from __future__ import annotations

import base64
import json
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .graph import SceneGraph, canonicalize

GLOBAL_TOKEN_TEXT = "<global>"

ROLE_OBJECT = "object"
ROLE_ATTRIBUTE = "attribute"
ROLE_RELATION = "relation"
ROLE_GLOBAL = "global"

REQUEST_SCHEMA = "g2t-request/v1"


@dataclass(frozen=True)
class Token:
    text: str
    role: str
    owner: str


@dataclass(frozen=True)
class MaskPolicy:
    attribute_to_relation: bool = False


@dataclass(frozen=True)
class GraphEncoderInput:
    tokens: tuple[Token, ...]
    mask: np.ndarray

    def __post_init__(self) -> None:
        self.mask.setflags(write=False)


def linearize(graph: SceneGraph, policy: MaskPolicy = MaskPolicy()) -> GraphEncoderInput:
    """Build the encoder input for a graph (empty graph -> just the global
    token with a 1x1 mask)."""
    graph = canonicalize(graph)
    tokens: list[Token] = []
    class_index: dict[str, int] = {}
    attr_indices: dict[str, list[int]] = {}
    for obj in graph.objects:
        class_index[obj.id] = len(tokens)
        tokens.append(Token(text=obj.class_label, role=ROLE_OBJECT, owner=obj.id))
        attr_indices[obj.id] = []
        for attr in obj.sorted_attributes():
            attr_indices[obj.id].append(len(tokens))
            tokens.append(Token(text=attr, role=ROLE_ATTRIBUTE, owner=obj.id))
    edge_index: list[tuple[int, str, str]] = []
    for edge in graph.edges:
        owner = f"{edge.source}|{edge.relation}|{edge.target}"
        edge_index.append((len(tokens), edge.source, edge.target))
        tokens.append(Token(text=edge.relation, role=ROLE_RELATION, owner=owner))
    global_pos = len(tokens)
    tokens.append(Token(text=GLOBAL_TOKEN_TEXT, role=ROLE_GLOBAL, owner=""))

    n = len(tokens)
    mask = np.zeros((n, n), dtype=bool)
    np.fill_diagonal(mask, True)
    mask[global_pos, :] = True
    mask[:, global_pos] = True

    def connect(i: int, j: int) -> None:
        mask[i, j] = True
        mask[j, i] = True

    for obj in graph.objects:
        for ai in attr_indices[obj.id]:
            connect(class_index[obj.id], ai)
    for pos, src, dst in edge_index:
        connect(pos, class_index[src])
        connect(pos, class_index[dst])
        connect(class_index[src], class_index[dst])
        if policy.attribute_to_relation:
            for ai in attr_indices[src] + attr_indices[dst]:
                connect(pos, ai)

    return GraphEncoderInput(tokens=tuple(tokens), mask=mask)


@dataclass(frozen=True)
class DecodeParams:
    """Documented decoder settings forwarded to an external service.

    Ranges: beams 1..64, max_len 1..4096, length_penalty 0..5,
    repetition_penalty 1..20; penalties are optional.
    """

    beams: int = 5
    max_len: int = 32
    length_penalty: float | None = 0.6
    repetition_penalty: float | None = None

    def __post_init__(self) -> None:
        if not (1 <= self.beams <= 64):
            raise ConfigError(f"beams out of range [1, 64]: {self.beams}")
        if not (1 <= self.max_len <= 4096):
            raise ConfigError(f"max_len out of range [1, 4096]: {self.max_len}")
        if self.length_penalty is not None and not (0.0 <= self.length_penalty <= 5.0):
            raise ConfigError(f"length_penalty out of range [0, 5]: {self.length_penalty}")
        if self.repetition_penalty is not None and not (
            1.0 <= self.repetition_penalty <= 20.0
        ):
            raise ConfigError(
                f"repetition_penalty out of range [1, 20]: {self.repetition_penalty}"
            )

    def to_dict(self) -> dict:
        doc: dict = {"beams": self.beams, "max_len": self.max_len}
        if self.length_penalty is not None:
            doc["length_penalty"] = self.length_penalty
        if self.repetition_penalty is not None:
            doc["repetition_penalty"] = self.repetition_penalty
        return doc


# Presets for short captions and paragraph-length output.
SHORT_CAPTION_PARAMS = DecodeParams(
    beams=5, max_len=32, length_penalty=0.6, repetition_penalty=None
)
PARAGRAPH_PARAMS = DecodeParams(
    beams=3, max_len=400, length_penalty=None, repetition_penalty=3.0
)


def mask_to_bits(mask: np.ndarray) -> str:
    """Row-major bitset of the mask, base64-encoded."""
    packed = np.packbits(mask.astype(np.uint8).reshape(-1))
    return base64.b64encode(packed.tobytes()).decode("ascii")


def bits_to_mask(bits: str, dim: int) -> np.ndarray:
    raw = np.frombuffer(base64.b64decode(bits), dtype=np.uint8)
    flat = np.unpackbits(raw)[: dim * dim]
    return flat.reshape(dim, dim).astype(bool)


def export_decoder_request(
    encoder_input: GraphEncoderInput, params: DecodeParams = SHORT_CAPTION_PARAMS
) -> str:
    """Self-describing JSON request any conforming decoder service can run."""
    n = len(encoder_input.tokens)
    doc = {
        "schema": REQUEST_SCHEMA,
        "tokens": [
            {"text": t.text, "role": t.role, "owner": t.owner}
            for t in encoder_input.tokens
        ],
        "mask": {"dim": n, "bits": mask_to_bits(encoder_input.mask)},
        "params": params.to_dict(),
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
