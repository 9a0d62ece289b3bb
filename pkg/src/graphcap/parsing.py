"""Deterministic caption parser: constrained English -> IR -> scene graph.

The grammar covers the sentence shapes that short visual captions use:

* noun phrases: determiner(s) + modifiers + head noun ("an elderly woman")
* verb relations with an optional folded preposition ("cooks in a kitchen")
* progressive forms ("is riding a horse") and copula + preposition ("is on")
* bare prepositional attachment to the nearest noun phrase ("a man in a hat")
* existential leads ("there is a dog")
* clause splitting on "and", commas, and sentence punctuation

Anything outside the grammar is skipped and reported as a warning, never an
error. A clause with a transitive verb but no object borrows the previous
clause's subject as its object ("two men play guitars and a crowd watches"
-> the crowd watches the men); an intransitive verb with no object is stored
as a progressive-form attribute on its subject ("a man dances" -> man with
attribute "dancing"). "the" + an already-seen head noun corefers with the
earliest matching entity; indefinite mentions always create a new entity.
Pronoun subjects he/she/they parse to a "person" entity; all other pronouns
and the listed adverbs are dropped, since they carry no graph content. Verbs
must come from the bundled verb table; an unlisted verb reads as a noun.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import lexicon
from .errors import EmptyInputError, GraphIntegrityError, InputError, InputSizeError
from .graph import SceneGraph, build_graph

MAX_CAPTION_LENGTH = 2048

_WORD_RE = re.compile(r"[a-z0-9]+(?:[-'][a-z0-9]+)*|,")
_SENTENCE_SPLIT_RE = re.compile(r"[.;!?]+")


@dataclass(frozen=True)
class ParseWarning:
    clause: str
    reason: str


@dataclass(frozen=True)
class IREntity:
    id: str
    head: str
    modifiers: tuple[str, ...]


@dataclass(frozen=True)
class SemanticIR:
    entities: tuple[IREntity, ...] = ()
    relations: tuple[tuple[str, str, str], ...] = ()
    warnings: tuple[ParseWarning, ...] = ()


@dataclass(frozen=True)
class SegmentCaptionRecord:
    segment_id: str
    caption: str
    ordinal: int = 0


@dataclass
class _NounPhrase:
    head: str
    modifiers: list[str]
    definite: bool


class _IRBuilder:
    def __init__(self) -> None:
        self.entities: list[dict] = []
        self.relations: list[tuple[str, str, str]] = []
        self.warnings: list[ParseWarning] = []

    def declare(self, np: _NounPhrase) -> str:
        head = lexicon.singularize(np.head)
        if np.definite:
            for ent in self.entities:
                if ent["head"] == head:
                    for mod in np.modifiers:
                        if mod not in ent["modifiers"]:
                            ent["modifiers"].append(mod)
                    return ent["id"]
        eid = f"e{len(self.entities) + 1}"
        self.entities.append({"id": eid, "head": head, "modifiers": list(np.modifiers)})
        return eid

    def add_modifier(self, eid: str, modifier: str) -> None:
        for ent in self.entities:
            if ent["id"] == eid and modifier not in ent["modifiers"]:
                ent["modifiers"].append(modifier)

    def relate(self, subject: str, predicate: str, obj: str) -> None:
        triple = (subject, predicate, obj)
        if triple not in self.relations:
            self.relations.append(triple)

    def warn(self, clause: list[str], reason: str) -> None:
        self.warnings.append(ParseWarning(clause=" ".join(clause), reason=reason))

    def finish(self) -> SemanticIR:
        return SemanticIR(
            entities=tuple(
                IREntity(e["id"], e["head"], tuple(e["modifiers"]))
                for e in self.entities
            ),
            relations=tuple(self.relations),
            warnings=tuple(self.warnings),
        )


def _match_preposition(tokens: list[str], i: int) -> tuple[str | None, int]:
    for phrase in lexicon.PREPOSITIONS_MULTI:
        n = len(phrase)
        if tuple(tokens[i : i + n]) == phrase:
            return " ".join(phrase), i + n
    if i < len(tokens) and tokens[i] in lexicon.PREPOSITIONS:
        return tokens[i], i + 1
    return None, i


def _starts_preposition(tokens: list[str], i: int) -> bool:
    return _match_preposition(tokens, i)[0] is not None


def _collect_np(tokens: list[str], i: int) -> tuple[_NounPhrase | None, int]:
    """Collect determiner* modifier* head starting at i.

    A finite verb joins the phrase only as the first word after a determiner,
    so noun/verb homographs ("a watch", "a play") can still serve as heads
    while a leading bare verb ("... and smiles") never does. Prepositions and
    copulas always end the phrase.
    """
    words: list[str] = []
    definite = False
    saw_determiner = False
    while i < len(tokens):
        tok = tokens[i]
        if tok in lexicon.COPULAS or _starts_preposition(tokens, i):
            break
        if lexicon.is_finite_verb(tok) and (words or not saw_determiner):
            break
        if tok in lexicon.DETERMINERS:
            saw_determiner = True
            definite = definite or tok in ("the", "this", "that", "these", "those")
            i += 1
            continue
        if tok in lexicon.SUBJECT_PRONOUNS:
            break
        words.append(tok)
        i += 1
    if not words:
        return None, i
    return _NounPhrase(head=words[-1], modifiers=words[:-1], definite=definite), i


def _attach_verb(
    builder: _IRBuilder,
    tokens: list[str],
    i: int,
    base: str,
    subject: str,
    prev_subject: str | None,
) -> tuple[str | None, int]:
    """Handle the rest of a verb predicate; returns (object entity id, i)."""
    label = base
    prep, j = _match_preposition(tokens, i)
    if prep is not None:
        label = f"{base} {prep}"
        i = j
    np, i = _collect_np(tokens, i)
    if np is not None:
        obj = builder.declare(np)
        builder.relate(subject, label, obj)
        return obj, i
    if base in lexicon.TRANSITIVE_VERBS and prev_subject is not None:
        builder.relate(subject, label, prev_subject)
        return None, i
    builder.add_modifier(subject, lexicon.BASE_TO_GERUND.get(base, base))
    return None, i


def _parse_clause(
    builder: _IRBuilder, tokens: list[str], prev_subject: str | None
) -> str | None:
    """Parse one clause; returns its subject entity id (for anaphora)."""
    if not tokens:
        return prev_subject
    i = 0
    if (
        tokens[0] == lexicon.EXISTENTIAL
        and len(tokens) > 1
        and tokens[1] in lexicon.COPULAS
    ):
        i = 2

    if i < len(tokens) and tokens[i] in lexicon.SUBJECT_PRONOUNS:
        subject = builder.declare(_NounPhrase("person", [], definite=False))
        i += 1
    else:
        np, i = _collect_np(tokens, i)
        if np is None:
            if i < len(tokens) and prev_subject is not None:
                subject = prev_subject  # subject-less continuation clause
            else:
                builder.warn(tokens, "no subject noun phrase")
                return prev_subject
        else:
            subject = builder.declare(np)

    attach_point = subject
    while i < len(tokens):
        tok = tokens[i]
        if tok in lexicon.COPULAS:
            i += 1
            prep, j = _match_preposition(tokens, i)
            if prep is not None:
                np, j = _collect_np(tokens, j)
                if np is None:
                    builder.warn(tokens, f"copula '{prep}' without object")
                    return subject
                obj = builder.declare(np)
                builder.relate(subject, prep, obj)
                attach_point = obj
                i = j
            elif i < len(tokens) and tokens[i] in lexicon.GERUND_TO_BASE:
                base = lexicon.GERUND_TO_BASE[tokens[i]]
                obj, i = _attach_verb(builder, tokens, i + 1, base, subject, prev_subject)
                attach_point = obj if obj is not None else subject
            elif i < len(tokens):
                # predicate adjectives: "is tall", "is parked near a house"
                # (consume plain words; a following preposition still attaches)
                while i < len(tokens):
                    tok = tokens[i]
                    if (
                        tok in lexicon.COPULAS
                        or lexicon.is_finite_verb(tok)
                        or _starts_preposition(tokens, i)
                    ):
                        break
                    if tok not in lexicon.DETERMINERS:
                        builder.add_modifier(subject, tok)
                    i += 1
            else:
                builder.warn(tokens, "dangling copula")
        elif lexicon.is_finite_verb(tok):
            base = lexicon.verb_base(tok)
            assert base is not None
            obj, i = _attach_verb(builder, tokens, i + 1, base, subject, prev_subject)
            attach_point = obj if obj is not None else subject
        elif _starts_preposition(tokens, i):
            prep, j = _match_preposition(tokens, i)
            np, j = _collect_np(tokens, j)
            if np is None:
                builder.warn(tokens[i:], f"preposition '{prep}' without object")
                return subject
            obj = builder.declare(np)
            builder.relate(attach_point, prep, obj)
            attach_point = obj
            i = j
        else:
            builder.warn(tokens[i:], "unrecognized clause structure")
            return subject
    return subject


def _clauses(caption: str) -> Iterator[list[str]]:
    for sentence in _SENTENCE_SPLIT_RE.split(caption.lower()):
        tokens = _WORD_RE.findall(sentence)
        clause: list[str] = []
        for tok in tokens:
            if tok == "," or tok == "and":
                if clause:
                    yield clause
                clause = []
            elif tok in lexicon.ADVERBS or tok in lexicon.OBJECT_PRONOUNS:
                continue
            else:
                clause.append(tok)
        if clause:
            yield clause


def parse_caption(caption: str, max_length: int = MAX_CAPTION_LENGTH) -> SemanticIR:
    """Parse one caption into the intermediate representation.

    Deterministic: the same caption always yields the same IR. Raises on an
    empty caption or one beyond the length cap; everything else degrades to
    warnings carried on the result.
    """
    if not caption or not caption.strip():
        raise EmptyInputError("caption is empty")
    if len(caption) > max_length:
        raise InputSizeError(
            f"caption length {len(caption)} exceeds cap {max_length}"
        )
    builder = _IRBuilder()
    prev_subject: str | None = None
    for clause in _clauses(caption):
        prev_subject = _parse_clause(builder, clause, prev_subject)
    return builder.finish()


def ir_to_graph(ir: SemanticIR, provenance: Iterable[str] = ()) -> SceneGraph:
    """Convert an IR into a canonical scene graph.

    Entities become objects (modifiers become the attribute set), relations
    become edges. Self-referential relations are dropped; duplicate triples
    collapse. Every node starts with merge count zero.
    """
    index = {ent.id: pos for pos, ent in enumerate(ir.entities)}
    for subj, _, obj in ir.relations:
        if subj not in index or obj not in index:
            raise GraphIntegrityError(
                f"relation references undeclared entity: {subj!r} or {obj!r}"
            )
    objects = [(ent.head, ent.modifiers) for ent in ir.entities]
    edges = [
        (index[subj], pred, index[obj])
        for subj, pred, obj in ir.relations
        if index[subj] != index[obj]
    ]
    return build_graph(objects, edges, provenance=provenance)


def parse_segment(record: SegmentCaptionRecord) -> SceneGraph:
    """Parse one segment record into a canonical graph stamped with its id."""
    if not record.segment_id:
        raise InputError("segment_id is empty")
    if record.ordinal < 0:
        raise InputError(f"ordinal {record.ordinal} is negative")
    ir = parse_caption(record.caption)
    return ir_to_graph(ir, provenance=[record.segment_id])


def iter_segment_records(lines: Iterable[str]) -> Iterator[SegmentCaptionRecord]:
    """Decode JSONL lines into records, reporting the offending line number."""
    count = 0
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        if not isinstance(doc, dict) or "segment_id" not in doc or "caption" not in doc:
            raise InputError(
                f"line {lineno}: expected object with segment_id and caption"
            )
        ordinal = doc.get("ordinal", count)
        if not isinstance(ordinal, int) or ordinal < 0:
            raise InputError(f"line {lineno}: ordinal must be a non-negative integer")
        yield SegmentCaptionRecord(
            segment_id=str(doc["segment_id"]),
            caption=str(doc["caption"]),
            ordinal=ordinal,
        )
        count += 1
