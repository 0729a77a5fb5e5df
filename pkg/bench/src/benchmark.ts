// Benchmark harness: sweep signature depth x dyadic window depth, tune a
// random forest on each cell by out-of-bag score, report test accuracy of
// the best cell. Test labels are only read in the final scoring step.

import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import Papa from "papaparse";

import { extractFeatures, FeatureBudgetExceeded, type FeatureMatrix } from "./bind.js";
import { deriveSeed, mulberry32, sampleWithoutReplacement } from "./rng.js";
import { trainForest, TrainingData, type TrainedForest } from "./rf.js";

export const N_TREES_GRID = [50, 100, 500, 1000];
export const MAX_DEPTH_GRID: Array<number | null> = [
  2, 4, 6, 8, 12, 16, 24, 32, 45, 60, 80, null,
];

export interface SkippedCell {
  depth: number;
  dyadicDepth: number;
  reason: string;
}

export interface BenchmarkResult {
  dataset: string;
  depth: number;
  dyadicDepth: number;
  nTrees: number;
  maxDepth: number | null;
  oobScore: number;
  testAccuracy: number;
  wallSeconds: number;
  skipped: SkippedCell[];
}

export interface BenchmarkOptions {
  dataset: string;
  trainPath: string;
  testPath: string;
  /** Signature depths to sweep; default 1..6. */
  depths?: number[];
  /** Dyadic window depths to sweep; default [2, 3, 4]. */
  dyadicDepths?: number[];
  /** Hyperparameter combinations sampled per cell; default 20. */
  draws?: number;
  seed?: number;
  featureLimit?: number;
  python?: string;
  log?: (line: string) => void;
}

interface CellBest {
  depth: number;
  dyadicDepth: number;
  nTrees: number;
  maxDepth: number | null;
  oobScore: number;
  forest: TrainedForest;
}

function canonicalExtract(
  opts: BenchmarkOptions,
  workDir: string,
  input: string,
  split: "train" | "test",
  depth: number,
  dyadicDepth: number
): FeatureMatrix {
  return extractFeatures({
    input,
    depth,
    window: `dyadic(${dyadicDepth})`,
    augmentation: "time,basepoint",
    split,
    seed: opts.seed ?? 0,
    featureLimit: opts.featureLimit,
    python: opts.python,
    workDir,
  });
}

export function runBenchmark(opts: BenchmarkOptions): BenchmarkResult {
  const depths = opts.depths ?? [1, 2, 3, 4, 5, 6];
  const dyadicDepths = opts.dyadicDepths ?? [2, 3, 4];
  const draws = opts.draws ?? 20;
  const seed = opts.seed ?? 0;
  const log = opts.log ?? (() => {});
  const started = performance.now();

  const workRoot = fs.mkdtempSync(path.join(os.tmpdir(), "sigbench-run-"));
  const skipped: SkippedCell[] = [];
  let best: CellBest | null = null;
  try {
    for (const depth of depths) {
      for (const dyadicDepth of dyadicDepths) {
        const cellDir = path.join(workRoot, `n${depth}q${dyadicDepth}-train`);
        let features: FeatureMatrix;
        try {
          features = canonicalExtract(
            opts, cellDir, opts.trainPath, "train", depth, dyadicDepth
          );
        } catch (err) {
          if (err instanceof FeatureBudgetExceeded) {
            skipped.push({ depth, dyadicDepth, reason: err.message });
            log(`cell N=${depth} q=${dyadicDepth}: skipped (feature budget)`);
            continue;
          }
          throw err;
        }

        const data = new TrainingData(features);
        const cellRng = mulberry32(deriveSeed(seed, depth, dyadicDepth));
        const comboCount = N_TREES_GRID.length * MAX_DEPTH_GRID.length;
        const combos = sampleWithoutReplacement(
          cellRng, comboCount, Math.min(draws, comboCount)
        );

        let cellBest: CellBest | null = null;
        for (const combo of combos) {
          const nTrees = N_TREES_GRID[Math.floor(combo / MAX_DEPTH_GRID.length)];
          const maxDepth = MAX_DEPTH_GRID[combo % MAX_DEPTH_GRID.length];
          const forest = trainForest(data, {
            nTrees,
            maxDepth,
            seed: deriveSeed(seed, depth, dyadicDepth, combo),
          });
          if (cellBest === null || forest.oobScore > cellBest.oobScore) {
            cellBest = {
              depth, dyadicDepth, nTrees, maxDepth,
              oobScore: forest.oobScore, forest,
            };
          }
        }
        if (cellBest !== null) {
          log(
            `cell N=${depth} q=${dyadicDepth}: ${features.cols} features, ` +
            `best oob ${cellBest.oobScore.toFixed(1)} ` +
            `(trees=${cellBest.nTrees} depth=${cellBest.maxDepth ?? "none"})`
          );
          if (best === null || cellBest.oobScore > best.oobScore) {
            best = cellBest;
          }
        }
      }
    }

    if (best === null) {
      throw new Error("every grid cell was skipped; nothing to score");
    }

    const testFeatures = canonicalExtract(
      opts,
      path.join(workRoot, `n${best.depth}q${best.dyadicDepth}-test`),
      opts.testPath,
      "test",
      best.depth,
      best.dyadicDepth
    );
    const testAccuracy = best.forest.accuracy(testFeatures);
    const wallSeconds = (performance.now() - started) / 1000;
    log(
      `selected N=${best.depth} q=${best.dyadicDepth}: ` +
      `test accuracy ${testAccuracy.toFixed(1)} in ${wallSeconds.toFixed(1)} s`
    );
    return {
      dataset: opts.dataset,
      depth: best.depth,
      dyadicDepth: best.dyadicDepth,
      nTrees: best.nTrees,
      maxDepth: best.maxDepth,
      oobScore: best.oobScore,
      testAccuracy,
      wallSeconds,
      skipped,
    };
  } finally {
    fs.rmSync(workRoot, { recursive: true, force: true });
  }
}

export function resultsToCsv(results: BenchmarkResult[]): string {
  const rows = results.map((r) => ({
    dataset: r.dataset,
    depth: r.depth,
    dyadic_depth: r.dyadicDepth,
    n_trees: r.nTrees,
    max_depth: r.maxDepth === null ? "none" : r.maxDepth,
    oob_score: r.oobScore.toFixed(2),
    test_accuracy: r.testAccuracy.toFixed(2),
    wall_seconds: r.wallSeconds.toFixed(2),
    skipped: r.skipped
      .map((s) => `N=${s.depth} q=${s.dyadicDepth}`)
      .join("; "),
  }));
  return Papa.unparse(rows, { newline: "\n" }) + "\n";
}

export function writeResultsCsv(results: BenchmarkResult[], outPath: string): void {
  fs.writeFileSync(outPath, resultsToCsv(results));
}
