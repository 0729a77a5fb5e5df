import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as path from "node:path";

import { resolvePython } from "../src/bind.js";

let cachedToyPath: string | null = null;

/** Locate the extractor's bundled 8-sample toy dataset. */
export function toyDatasetPath(): string {
  if (cachedToyPath === null) {
    const proc = spawnSync(
      resolvePython(),
      ["-c", "from sigmethod.dataset import toy_dataset_path; print(toy_dataset_path())"],
      { encoding: "utf8" }
    );
    if (proc.status !== 0) {
      throw new Error(`cannot locate toy dataset: ${proc.stderr}`);
    }
    cachedToyPath = proc.stdout.trim();
  }
  return cachedToyPath;
}

/** Copy the toy dataset into dir as a train/test pair. */
export function toyTrainTest(dir: string): { train: string; test: string } {
  const train = path.join(dir, "toy_TRAIN.ts");
  const test = path.join(dir, "toy_TEST.ts");
  fs.copyFileSync(toyDatasetPath(), train);
  fs.copyFileSync(toyDatasetPath(), test);
  return { train, test };
}

/** Write a smaller toy variant keeping the given data line indices. */
export function toySubset(dir: string, keep: number[]): string {
  const lines = fs.readFileSync(toyDatasetPath(), "utf8").trimEnd().split("\n");
  const dataAt = lines.findIndex((line) => line.trim().toLowerCase() === "@data");
  const header = lines.slice(0, dataAt + 1);
  const data = lines.slice(dataAt + 1);
  const picked = keep.map((i) => data[i]);
  const out = path.join(dir, "toy_subset.ts");
  fs.writeFileSync(out, header.concat(picked).join("\n") + "\n");
  return out;
}

/** IEEE-754 bit pattern of a double, for bitwise comparisons. */
export function doubleBits(x: number): bigint {
  const view = new DataView(new ArrayBuffer(8));
  view.setFloat64(0, x);
  return view.getBigUint64(0);
}
