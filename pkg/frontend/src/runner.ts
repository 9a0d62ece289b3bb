/** Subprocess plumbing: invoke the core CLI and collect its artifacts. */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { errorFromExit, InternalError } from "./errors.js";

/** Interpreter used to launch the core; override with GRAPHCAP_PYTHON. */
export function pythonInterpreter(): string {
  return process.env.GRAPHCAP_PYTHON ?? "python3";
}

export interface CliRun {
  stdout: string;
  outDir: string;
}

function parseErrorLine(stderr: string): { type: string; message: string } | null {
  const lines = stderr
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  for (let i = lines.length - 1; i >= 0; i--) {
    try {
      const doc = JSON.parse(lines[i]);
      if (doc && typeof doc === "object" && doc.error) {
        return { type: String(doc.error.type), message: String(doc.error.message) };
      }
    } catch {
      // diagnostics lines are JSON too, but without an "error" key
    }
  }
  return null;
}

export function runCli(args: string[]): { stdout: string; stderr: string } {
  const result = spawnSync(pythonInterpreter(), ["-m", "graphcap.cli", ...args], {
    encoding: "utf-8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (result.error) {
    throw new InternalError(
      `failed to launch core CLI: ${result.error.message}`,
      4,
      "SpawnError",
    );
  }
  if (result.status !== 0) {
    const parsed = parseErrorLine(result.stderr ?? "");
    const code = result.status ?? 4;
    throw errorFromExit(
      code,
      parsed?.type ?? "UnknownError",
      parsed?.message ?? `core CLI exited with status ${code}`,
    );
  }
  return { stdout: result.stdout ?? "", stderr: result.stderr ?? "" };
}

export function withWorkdir<T>(body: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "graphcap-"));
  try {
    return body(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

export function writeJsonl(path: string, docs: unknown[]): void {
  writeFileSync(path, docs.map((d) => JSON.stringify(d)).join("\n") + "\n", "utf-8");
}

export function readArtifact(outDir: string, name: string): string {
  return readFileSync(join(outDir, name), "utf-8");
}
