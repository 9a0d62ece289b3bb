/**
 * Binding parity: results must be byte-identical to driving the core CLI
 * directly with the same inputs, and core errors must surface natively.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import {
  ConfigError,
  consolidate,
  extractPrioritizedSubgraph,
  InputError,
  linearize,
  parseSegment,
  scorePrf,
  type GraphDocument,
  type SegmentRecord,
} from "../src/index.js";
import { pythonInterpreter } from "../src/runner.js";

function python(code: string): string {
  const result = spawnSync(pythonInterpreter(), ["-c", code], { encoding: "utf-8" });
  if (result.status !== 0) {
    throw new Error(`python failed: ${result.stderr}`);
  }
  return result.stdout.trim();
}

const demoPath = python(
  "from graphcap.data import demo_captions_path; print(demo_captions_path())",
);
const demoRecords: SegmentRecord[] = readFileSync(demoPath, "utf-8")
  .split("\n")
  .filter((line) => line.trim().length > 0)
  .map((line) => JSON.parse(line) as SegmentRecord);

const scratch: string[] = [];

function cliReference(args: string[]): string {
  const dir = mkdtempSync(join(tmpdir(), "graphcap-ref-"));
  scratch.push(dir);
  const outDir = join(dir, "out");
  const result = spawnSync(
    pythonInterpreter(),
    ["-m", "graphcap.cli", "run", "--input", demoPath, "--out-dir", outDir, ...args],
    { encoding: "utf-8" },
  );
  expect(result.status).toBe(0);
  return outDir;
}

afterAll(() => {
  for (const dir of scratch) {
    rmSync(dir, { recursive: true, force: true });
  }
});

describe("binding parity with the CLI on the demo corpus", () => {
  it("consolidate matches graph JSON and trace JSONL byte for byte", () => {
    const outDir = cliReference(["--emit", "graph", "--trace"]);
    const viaBindings = consolidate(demoRecords);
    expect(viaBindings.graphJson).toBe(readFileSync(join(outDir, "graph.json"), "utf-8"));
    expect(viaBindings.traceJsonl).toBe(
      readFileSync(join(outDir, "trace.jsonl"), "utf-8"),
    );
  });

  it("linearize matches the g2t request byte for byte", () => {
    const outDir = cliReference(["--emit", "tokens"]);
    const graph = consolidate(demoRecords).graph;
    const viaBindings = linearize(graph);
    expect(viaBindings.requestJson).toBe(
      readFileSync(join(outDir, "g2t_request.json"), "utf-8"),
    );
  });

  it("subgraph extraction matches the CLI --top-k artifact", () => {
    const outDir = cliReference(["--emit", "graph", "--top-k", "1"]);
    const graph = consolidate(demoRecords).graph;
    const sub = extractPrioritizedSubgraph(graph, 1);
    expect(JSON.stringify(sub)).toBe(
      JSON.stringify(JSON.parse(readFileSync(join(outDir, "subgraph.json"), "utf-8"))),
    );
  });
});

describe("binding behaviors", () => {
  it("parses a single segment", () => {
    const graph = parseSegment({ segment_id: "seg3", caption: "a man rides a horse" });
    expect(graph.provenance).toEqual(["seg3"]);
    expect(graph.objects.map((o) => o.class).sort()).toEqual(["horse", "man"]);
    expect(graph.edges).toHaveLength(1);
    expect(graph.edges[0].rel).toBe("ride");
  });

  it("consolidates bare caption strings with synthetic segment ids", () => {
    const result = consolidate([
      "an elderly woman cooks in a kitchen",
      "a smiling woman stands in a kitchen",
    ]);
    expect(result.graph.provenance).toEqual(["s0", "s1"]);
    const classes = result.graph.objects.map((o) => o.class);
    expect(classes.filter((c) => c === "woman")).toHaveLength(1);
    expect(result.traceJsonl.trim().split("\n")).toHaveLength(1);
  });

  it("accepts graph documents as consolidation input", () => {
    const a = parseSegment({ segment_id: "x", caption: "a dog" });
    const b = parseSegment({ segment_id: "y", caption: "a dog" });
    const merged = consolidate([a, b]);
    expect(merged.graph.objects).toHaveLength(1);
    expect(merged.graph.objects[0].merge_count).toBe(1);
  });

  it("returns the empty graph for an empty input list", () => {
    const result = consolidate([]);
    expect(result.graph).toEqual({ objects: [], edges: [], provenance: [] });
    expect(JSON.parse(result.graphJson)).toEqual(result.graph);
  });

  it("exposes paragraph decoder parameters", () => {
    const graph = parseSegment({ segment_id: "s", caption: "a dog" });
    const { request } = linearize(graph, { paragraph: true });
    expect(request.params).toEqual({ beams: 3, max_len: 400, repetition_penalty: 3.0 });
    expect(request.mask.dim).toBe(request.tokens.length);
  });

  it("scores identical captions at exactly one", () => {
    const result = scorePrf("a dog runs in a park", "a dog runs in a park");
    expect(result).toEqual({ P: 1, R: 1, F: 1 });
  });

  it("surfaces config errors natively", () => {
    expect(() => consolidate(["a dog"], { tau: 1.5 })).toThrow(ConfigError);
    expect(() =>
      consolidate(["a dog"], { tau: "high" as unknown as number }),
    ).toThrow(ConfigError);
  });

  it("surfaces input errors natively", () => {
    expect(() => parseSegment({ segment_id: "s", caption: "   " })).toThrow(InputError);
  });

  it("rejects mixed graph and caption inputs", () => {
    const graph: GraphDocument = { objects: [], edges: [], provenance: [] };
    expect(() => consolidate([graph, "a dog"])).toThrow(ConfigError);
  });
});
