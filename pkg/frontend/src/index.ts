/**
 * Node bindings for the scene-graph consolidation core.
 *
 * Thin, stateless pass-throughs: every call shells out to the core CLI and
 * returns its JSON artifacts unchanged, so results are byte-identical to
 * running the CLI directly with the same inputs. No algorithm logic lives on
 * this side of the boundary.
 */

import { join } from "node:path";
import { writeFileSync } from "node:fs";

import { ConfigError } from "./errors.js";
import { readArtifact, runCli, withWorkdir, writeJsonl } from "./runner.js";

export { ConfigError, GraphcapError, InputError, InternalError } from "./errors.js";

export interface GraphObject {
  id: string;
  class: string;
  attributes: string[];
  merge_count: number;
}

export interface GraphEdge {
  src: string;
  rel: string;
  dst: string;
}

export interface GraphDocument {
  objects: GraphObject[];
  edges: GraphEdge[];
  provenance: string[];
}

export interface SegmentRecord {
  segment_id: string;
  caption: string;
  ordinal?: number;
}

export interface ConsolidateOptions {
  /** Merge threshold in (0, 1]; defaults to the core's 0.9. */
  tau?: number;
  /** Prioritized-subgraph budget; unset means no extraction. */
  topK?: number;
  /** Embedding provider spec: "hashed" or "file:<path>". */
  provider?: string;
}

export interface ConsolidateResult {
  graph: GraphDocument;
  /** Raw graph.json artifact, byte-identical to the CLI's. */
  graphJson: string;
  /** Raw merge-trace JSONL, one event per line. */
  traceJsonl: string;
  /** Present when topK was set. */
  subgraph?: GraphDocument;
  subgraphJson?: string;
}

export interface EncoderToken {
  text: string;
  role: "object" | "attribute" | "relation" | "global";
  owner: string;
}

export interface DecoderRequest {
  schema: string;
  tokens: EncoderToken[];
  mask: { dim: number; bits: string };
  params: Record<string, number>;
}

export interface LinearizeResult {
  request: DecoderRequest;
  /** Raw g2t_request.json artifact, byte-identical to the CLI's. */
  requestJson: string;
}

export interface ScoreResult {
  P: number;
  R: number;
  F: number;
}

export type ConsolidateInput = string | SegmentRecord | GraphDocument;

function checkNumber(name: string, value: unknown): void {
  if (value !== undefined && (typeof value !== "number" || !Number.isFinite(value))) {
    throw new ConfigError(`${name} must be a finite number`, 3, "ConfigError");
  }
}

function toRecords(inputs: ConsolidateInput[]): {
  format: "captions" | "graphs";
  docs: unknown[];
} {
  if (inputs.some((x) => typeof x === "object" && x !== null && "objects" in x)) {
    if (!inputs.every((x) => typeof x === "object" && x !== null && "objects" in x)) {
      throw new ConfigError(
        "inputs must be all graphs or all captions",
        3,
        "ConfigError",
      );
    }
    return { format: "graphs", docs: inputs };
  }
  const docs = inputs.map((x, i) =>
    typeof x === "string"
      ? { segment_id: `s${i}`, caption: x, ordinal: i }
      : { ordinal: i, ...(x as SegmentRecord) },
  );
  return { format: "captions", docs };
}

function optionArgs(options: ConsolidateOptions): string[] {
  checkNumber("tau", options.tau);
  checkNumber("topK", options.topK);
  const args: string[] = [];
  if (options.tau !== undefined) args.push("--tau", String(options.tau));
  if (options.topK !== undefined) args.push("--top-k", String(options.topK));
  if (options.provider !== undefined) args.push("--provider", options.provider);
  return args;
}

function runPipeline(
  format: "captions" | "graphs",
  docs: unknown[],
  extraArgs: string[],
  artifacts: string[],
): Record<string, string> {
  return withWorkdir((dir) => {
    const input = join(dir, "input.jsonl");
    writeJsonl(input, docs);
    const outDir = join(dir, "out");
    runCli([
      "run",
      "--input",
      input,
      "--out-dir",
      outDir,
      "--input-format",
      format,
      ...extraArgs,
    ]);
    const result: Record<string, string> = {};
    for (const name of artifacts) {
      result[name] = readArtifact(outDir, name);
    }
    return result;
  });
}

/** Parse one segment caption into its canonical scene-graph document. */
export function parseSegment(record: SegmentRecord): GraphDocument {
  const out = runPipeline("captions", [{ ordinal: 0, ...record }], ["--emit", "graph"], [
    "graph.json",
  ]);
  return JSON.parse(out["graph.json"]) as GraphDocument;
}

/**
 * Consolidate captions (strings or records) or graph documents into one
 * video-level graph. Bare strings get synthetic segment ids s0, s1, ...
 */
export function consolidate(
  inputs: ConsolidateInput[],
  options: ConsolidateOptions = {},
): ConsolidateResult {
  if (inputs.length === 0) {
    // matches the core's empty-graph document and serialization style
    const graph: GraphDocument = { objects: [], edges: [], provenance: [] };
    return {
      graph,
      graphJson: JSON.stringify(graph, null, 2) + "\n",
      traceJsonl: "",
    };
  }
  const { format, docs } = toRecords(inputs);
  const wantSubgraph = options.topK !== undefined;
  const names = ["graph.json", "trace.jsonl"];
  if (wantSubgraph) names.push("subgraph.json");
  const out = runPipeline(
    format,
    docs,
    ["--emit", "graph", "--trace", ...optionArgs(options)],
    names,
  );
  const result: ConsolidateResult = {
    graph: JSON.parse(out["graph.json"]) as GraphDocument,
    graphJson: out["graph.json"],
    traceJsonl: out["trace.jsonl"],
  };
  if (wantSubgraph) {
    result.subgraph = JSON.parse(out["subgraph.json"]) as GraphDocument;
    result.subgraphJson = out["subgraph.json"];
  }
  return result;
}

/** Neighborhood of the k highest-merge-count nodes of a graph document. */
export function extractPrioritizedSubgraph(
  graph: GraphDocument,
  k: number,
): GraphDocument {
  checkNumber("k", k);
  const out = runPipeline(
    "graphs",
    [graph],
    ["--emit", "graph", "--top-k", String(k)],
    ["subgraph.json"],
  );
  return JSON.parse(out["subgraph.json"]) as GraphDocument;
}

/** Build the graph-to-text encoder request for a graph document. */
export function linearize(
  graph: GraphDocument,
  options: { paragraph?: boolean } = {},
): LinearizeResult {
  const args = ["--emit", "tokens"];
  if (options.paragraph) args.push("--paragraph");
  const out = runPipeline("graphs", [graph], args, ["g2t_request.json"]);
  return {
    request: JSON.parse(out["g2t_request.json"]) as DecoderRequest,
    requestJson: out["g2t_request.json"],
  };
}

/** Embedding-based P/R/F between a reference and a candidate caption. */
export function scorePrf(reference: string, candidate: string): ScoreResult {
  return withWorkdir((dir) => {
    const ref = join(dir, "reference.txt");
    const cand = join(dir, "candidate.txt");
    writeFileSync(ref, reference, "utf-8");
    writeFileSync(cand, candidate, "utf-8");
    const { stdout } = runCli(["score", "--reference", ref, "--candidate", cand]);
    return JSON.parse(stdout) as ScoreResult;
  });
}
