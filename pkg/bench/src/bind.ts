// Binding layer over the feature-extraction CLI.
//
// The extractor is consumed strictly through its external interface: we write
// a run config, invoke the command line, and parse the CSV feature file it
// emits. Feature values cross the boundary as shortest round-trip decimal
// strings, so the doubles landed here are bit-identical to the ones written.

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import Papa from "papaparse";

/** Row-major float64 feature matrix with column names and optional labels. */
export interface FeatureMatrix {
  names: string[];
  values: Float64Array;
  rows: number;
  cols: number;
  labels: string[] | null;
}

export function matrixRow(matrix: FeatureMatrix, i: number): Float64Array {
  if (i < 0 || i >= matrix.rows) {
    throw new RangeError(`row ${i} out of range 0..${matrix.rows - 1}`);
  }
  return matrix.values.subarray(i * matrix.cols, (i + 1) * matrix.cols);
}

/** Raised when the extractor refuses a run that would exceed its feature budget. */
export class FeatureBudgetExceeded extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "FeatureBudgetExceeded";
  }
}

export interface ExtractOptions {
  /** Dataset file (.ts or long-format .csv). */
  input: string;
  depth: number;
  /** Window expression, e.g. "dyadic(2)"; default global. */
  window?: string;
  /** Augmentation list, e.g. "time,basepoint". */
  augmentation?: string;
  transform?: "signature" | "logsignature";
  rescale?: "none" | "pre" | "post";
  featureLimit?: number;
  seed?: number;
  split?: "train" | "test" | "unsplit" | "infer";
  /** Where to keep the config and feature file; a temp dir by default. */
  workDir?: string;
  /** Interpreter used to run the extractor; override with SIGMETHOD_PYTHON. */
  python?: string;
}

export function resolvePython(explicit?: string): string {
  return explicit ?? process.env.SIGMETHOD_PYTHON ?? "python3";
}

function yamlQuote(value: string): string {
  return `'${value.replace(/'/g, "''")}'`;
}

export function renderConfig(opts: ExtractOptions, outPath: string): string {
  const lines = [
    "version: 1",
    "input:",
    `  path: ${yamlQuote(opts.input)}`,
    `  split: ${opts.split ?? "infer"}`,
    "pipeline:",
    `  depth: ${opts.depth}`,
    `  augmentation: ${yamlQuote(opts.augmentation ?? "")}`,
    `  window: ${yamlQuote(opts.window ?? "global")}`,
    `  transform: ${opts.transform ?? "signature"}`,
    `  rescale: ${opts.rescale ?? "none"}`,
    `  feature_limit: ${opts.featureLimit ?? 100000}`,
    "output:",
    `  path: ${yamlQuote(outPath)}`,
    "  format: csv",
    `seed: ${opts.seed ?? 0}`,
  ];
  return lines.join("\n") + "\n";
}

/**
 * Run the extractor on a dataset and bind the resulting feature file.
 * Canonical pipelines pass augmentation "time,basepoint" and a dyadic window.
 */
export function extractFeatures(opts: ExtractOptions): FeatureMatrix {
  const workDir =
    opts.workDir ?? fs.mkdtempSync(path.join(os.tmpdir(), "sigbench-"));
  fs.mkdirSync(workDir, { recursive: true });
  const configPath = path.join(workDir, "run.yaml");
  const outPath = path.join(workDir, "features.csv");
  fs.writeFileSync(configPath, renderConfig(opts, outPath));

  const python = resolvePython(opts.python);
  const proc = spawnSync(python, ["-m", "sigmethod", "extract", "--config", configPath], {
    encoding: "utf8",
  });
  if (proc.error) {
    throw new Error(`failed to launch ${python}: ${proc.error.message}`);
  }
  if (proc.status === 4) {
    throw new FeatureBudgetExceeded(proc.stderr.trim());
  }
  if (proc.status !== 0) {
    throw new Error(
      `feature extraction failed (exit ${proc.status}): ${proc.stderr.trim()}`
    );
  }
  return parseFeaturesCsv(fs.readFileSync(outPath, "utf8"));
}

/** Parse a CLI feature file: header of column names, float rows, optional
 * trailing label column. A header-only file yields a valid 0-row matrix. */
export function parseFeaturesCsv(text: string): FeatureMatrix {
  const parsed = Papa.parse<string[]>(text, {
    delimiter: ",",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`bad feature file: ${first.message} (row ${first.row})`);
  }
  const records = parsed.data;
  if (records.length === 0) {
    throw new Error("bad feature file: missing header");
  }
  const header = records[0];
  const hasLabels = header[header.length - 1] === "label";
  const names = hasLabels ? header.slice(0, -1) : header.slice();
  const cols = names.length;
  const rows = records.length - 1;

  const values = new Float64Array(rows * cols);
  const labels: string[] | null = hasLabels ? [] : null;
  for (let i = 0; i < rows; i++) {
    const record = records[i + 1];
    if (record.length !== header.length) {
      throw new Error(
        `bad feature file: row ${i + 1} has ${record.length} fields, expected ${header.length}`
      );
    }
    for (let j = 0; j < cols; j++) {
      const value = Number(record[j]);
      if (!Number.isFinite(value)) {
        throw new Error(`bad feature file: row ${i + 1} col ${j + 1}: ${record[j]!}`);
      }
      values[i * cols + j] = value;
    }
    if (labels !== null) {
      labels.push(record[cols]);
    }
  }
  return { names, values, rows, cols, labels };
}
