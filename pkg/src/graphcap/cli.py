"""Command-line pipeline: captions in, consolidated graph and caption out.

``graphcap run`` ingests a JSONL file of segment captions, parses each into a
scene graph, consolidates them, optionally extracts the top-k neighborhood,
and writes the requested artifacts plus a reproducibility manifest.
``graphcap score`` compares two caption files with embedding-based P/R/F.

Exit codes: 0 success, 2 input error, 3 config error, 4 internal invariant
violation. Failures print one machine-readable JSON error line to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .consolidate import (
    SHORT_CAPTION_TOP_K,
    ConsolidationConfig,
    consolidate,
    extract_prioritized_subgraph,
)
from .dot import to_dot
from .embedding import provider_from_spec
from .encoder import (
    PARAGRAPH_PARAMS,
    SHORT_CAPTION_PARAMS,
    export_decoder_request,
    linearize,
)
from .errors import ConfigError, GraphcapError, InputError
from .graph import SceneGraph, canonicalize, graph_from_dict, graph_to_dict
from .parsing import ir_to_graph, iter_segment_records, parse_caption
from .realize import realize_template
from .scoring import embed_caption, score_prf

EMIT_MODES = ("graph", "dot", "tokens", "caption", "all")

_EXIT_INPUT = 2
_EXIT_CONFIG = 3
_EXIT_INTERNAL = 4


@dataclass
class PipelineOptions:
    input_path: Path
    out_dir: Path
    config: ConsolidationConfig
    emit: str = "all"
    write_trace: bool = False
    paragraph: bool = False
    input_format: str = "captions"
    provider_spec: str = "hashed"


@dataclass
class PipelineRun:
    options: PipelineOptions
    record_count: int = 0
    outputs: dict[str, Path] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    warnings: int = 0


def _sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_graphs(run: PipelineRun) -> list[SceneGraph]:
    opts = run.options
    graphs: list[SceneGraph] = []
    try:
        with opts.input_path.open("r", encoding="utf-8") as handle:
            if opts.input_format == "graphs":
                for lineno, line in enumerate(handle, start=1):
                    if not line.strip():
                        continue
                    try:
                        doc = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise InputError(f"line {lineno}: invalid JSON ({exc.msg})")
                    graphs.append(canonicalize(graph_from_dict(doc)))
                    run.record_count += 1
            else:
                for record in iter_segment_records(handle):
                    ir = parse_caption(record.caption)
                    for warning in ir.warnings:
                        run.warnings += 1
                        print(
                            json.dumps(
                                {
                                    "segment_id": record.segment_id,
                                    "clause": warning.clause,
                                    "reason": warning.reason,
                                },
                                ensure_ascii=False,
                            ),
                            file=sys.stderr,
                        )
                    graphs.append(ir_to_graph(ir, provenance=[record.segment_id]))
                    run.record_count += 1
    except OSError as exc:
        raise InputError(f"cannot read {opts.input_path}: {exc.strerror}") from exc
    if run.record_count == 0:
        raise InputError(f"no records found in {opts.input_path}")
    return graphs


def run_pipeline(options: PipelineOptions) -> PipelineRun:
    """Execute parse -> consolidate -> extract -> linearize -> realize."""
    run = PipelineRun(options=options)
    out_dir = options.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    started = time.perf_counter()
    graphs = _load_graphs(run)
    run.timings["ingest_parse"] = time.perf_counter() - started

    started = time.perf_counter()
    video_graph, trace = consolidate(graphs, options.config)
    run.timings["consolidate"] = time.perf_counter() - started

    started = time.perf_counter()
    focus_graph = video_graph
    if options.config.top_k is not None:
        focus_graph = extract_prioritized_subgraph(video_graph, options.config.top_k)
    run.timings["extract"] = time.perf_counter() - started

    emit = options.emit

    def want(kind: str) -> bool:
        return emit in (kind, "all")

    def write(name: str, data: str) -> None:
        path = out_dir / name
        path.write_text(data, encoding="utf-8")
        run.outputs[name] = path

    started = time.perf_counter()
    if want("graph"):
        write("graph.json", json.dumps(graph_to_dict(video_graph), indent=2) + "\n")
        if options.config.top_k is not None:
            write(
                "subgraph.json", json.dumps(graph_to_dict(focus_graph), indent=2) + "\n"
            )
    if want("dot"):
        write("graph.dot", to_dot(video_graph))
    if want("tokens"):
        params = PARAGRAPH_PARAMS if options.paragraph else SHORT_CAPTION_PARAMS
        write("g2t_request.json", export_decoder_request(linearize(focus_graph), params))
    if want("caption"):
        write("caption.txt", realize_template(focus_graph) + "\n")
    if options.write_trace:
        write("trace.jsonl", trace.to_jsonl())
    run.timings["emit"] = time.perf_counter() - started

    manifest = {
        "config": {
            "tau": options.config.tau,
            "top_k": options.config.top_k,
            "provider": options.provider_spec,
            "provider_version": options.config.provider.descriptor.version,
            "dimension": options.config.provider.descriptor.dimension,
            "emit": emit,
            "paragraph": options.paragraph,
            "trace": options.write_trace,
        },
        "input": {
            "path": str(options.input_path),
            "sha256": _sha256_file(options.input_path),
            "records": run.record_count,
            "format": options.input_format,
        },
        "artifacts": {
            name: _sha256_file(path) for name, path in sorted(run.outputs.items())
        },
        "timings": {name: round(value, 6) for name, value in run.timings.items()},
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    run.outputs["manifest.json"] = manifest_path
    return run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphcap",
        description="Consolidate segment-caption scene graphs into a video-level "
        "graph and realize captions from it.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run the end-to-end pipeline")
    run_p.add_argument("--input", required=True, type=Path, help="segment JSONL file")
    run_p.add_argument("--out-dir", required=True, type=Path, help="artifact directory")
    run_p.add_argument("--tau", type=float, default=None, help="merge threshold")
    run_p.add_argument("--top-k", type=int, default=None, help="subgraph node budget")
    run_p.add_argument(
        "--short-caption",
        action="store_true",
        help="preset for focused short captions: top-k 1",
    )
    run_p.add_argument(
        "--provider", default="hashed", help="embedding provider: hashed or file:<path>"
    )
    run_p.add_argument("--config", type=Path, default=None, help="JSON config file")
    run_p.add_argument("--emit", choices=EMIT_MODES, default="all")
    run_p.add_argument(
        "--trace", action="store_true", help="also write the merge trace JSONL"
    )
    run_p.add_argument(
        "--paragraph",
        action="store_true",
        help="use paragraph decoder-request settings",
    )
    run_p.add_argument(
        "--input-format",
        choices=("captions", "graphs"),
        default="captions",
        help="JSONL of caption records, or of scene-graph documents",
    )

    score_p = sub.add_parser("score", help="embedding P/R/F between two captions")
    score_p.add_argument("--reference", required=True, type=Path)
    score_p.add_argument("--candidate", required=True, type=Path)
    score_p.add_argument("--provider", default="hashed")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    if args.config is not None:
        config = ConsolidationConfig.from_file(args.config)
        tau = args.tau if args.tau is not None else config.tau
        top_k = args.top_k if args.top_k is not None else config.top_k
        provider = config.provider
    else:
        tau = args.tau if args.tau is not None else ConsolidationConfig.tau
        top_k = args.top_k
        provider = provider_from_spec(args.provider)
    if args.short_caption and top_k is None:
        top_k = SHORT_CAPTION_TOP_K
    config = ConsolidationConfig(tau=tau, top_k=top_k, provider=provider)
    options = PipelineOptions(
        input_path=args.input,
        out_dir=args.out_dir,
        config=config,
        emit=args.emit,
        write_trace=args.trace,
        paragraph=args.paragraph,
        input_format=args.input_format,
        provider_spec=args.provider,
    )
    run = run_pipeline(options)
    print(
        json.dumps(
            {
                "records": run.record_count,
                "warnings": run.warnings,
                "artifacts": sorted(run.outputs),
            }
        )
    )
    return 0


def _read_caption_file(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _cmd_score(args: argparse.Namespace) -> int:
    provider = provider_from_spec(args.provider)
    reference = embed_caption(_read_caption_file(args.reference), provider)
    candidate = embed_caption(_read_caption_file(args.candidate), provider)
    result = score_prf(reference, candidate)
    print(
        json.dumps(
            {"P": result.precision, "R": result.recall, "F": result.f1},
            ensure_ascii=False,
        )
    )
    return 0


def _fail(exc: Exception, code: int) -> int:
    print(
        json.dumps(
            {"error": {"type": type(exc).__name__, "message": str(exc), "exit": code}}
        ),
        file=sys.stderr,
    )
    return code


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_score(args)
    except InputError as exc:
        return _fail(exc, _EXIT_INPUT)
    except ConfigError as exc:
        return _fail(exc, _EXIT_CONFIG)
    except GraphcapError as exc:
        return _fail(exc, _EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())
