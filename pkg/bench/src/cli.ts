#!/usr/bin/env node
// Command line for the benchmark harness.
//
//   sigbench run --data <dir> --dataset BasicMotions
//   sigbench run --train X_TRAIN.ts --test X_TEST.ts --name X --out results.csv

import * as path from "node:path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { runBenchmark, writeResultsCsv } from "./benchmark.js";

function parseIntList(text: string): number[] {
  return text.split(",").map((part) => {
    const value = Number.parseInt(part.trim(), 10);
    if (!Number.isFinite(value)) {
      throw new Error(`not an integer list: ${text}`);
    }
    return value;
  });
}

async function main(): Promise<number> {
  const argv = await yargs(hideBin(process.argv))
    .scriptName("sigbench")
    .usage("$0 run [options]")
    .option("data", { type: "string", describe: "directory holding <name>/<name>_TRAIN.ts" })
    .option("dataset", { type: "string", describe: "dataset name inside --data" })
    .option("train", { type: "string", describe: "explicit train file" })
    .option("test", { type: "string", describe: "explicit test file" })
    .option("name", { type: "string", describe: "dataset name for reporting" })
    .option("out", { type: "string", describe: "write a results CSV here" })
    .option("depths", { type: "string", default: "1,2,3,4,5,6" })
    .option("windows", { type: "string", default: "2,3,4", describe: "dyadic depths" })
    .option("draws", { type: "number", default: 20 })
    .option("seed", { type: "number", default: 0 })
    .option("feature-limit", { type: "number", default: 100000 })
    .demandCommand(1)
    .strict()
    .parse();

  const command = String(argv._[0]);
  if (command !== "run") {
    console.error(`unknown command: ${command}`);
    return 2;
  }

  let trainPath = argv.train;
  let testPath = argv.test;
  let name = argv.name;
  if (argv.data && argv.dataset) {
    trainPath ??= path.join(argv.data, argv.dataset, `${argv.dataset}_TRAIN.ts`);
    testPath ??= path.join(argv.data, argv.dataset, `${argv.dataset}_TEST.ts`);
    name ??= argv.dataset;
  }
  if (!trainPath || !testPath || !name) {
    console.error("need either --data with --dataset, or --train/--test/--name");
    return 2;
  }

  const result = runBenchmark({
    dataset: name,
    trainPath,
    testPath,
    depths: parseIntList(argv.depths),
    dyadicDepths: parseIntList(argv.windows),
    draws: argv.draws,
    seed: argv.seed,
    featureLimit: argv["feature-limit"],
    log: (line) => console.error(line),
  });

  console.log(
    `${result.dataset}: N=${result.depth} q=${result.dyadicDepth} ` +
    `trees=${result.nTrees} depth=${result.maxDepth ?? "none"} ` +
    `oob=${result.oobScore.toFixed(1)} test=${result.testAccuracy.toFixed(1)} ` +
    `wall=${result.wallSeconds.toFixed(1)}s`
  );
  if (argv.out) {
    writeResultsCsv([result], argv.out);
  }
  return 0;
}

main().then(
  (code) => process.exit(code),
  (err) => {
    console.error(err instanceof Error ? err.message : String(err));
    process.exit(1);
  }
);
