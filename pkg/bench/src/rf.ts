// Random-forest classifier: bagged CART trees, Gini split criterion,
// sqrt-of-features candidates per split, out-of-bag scoring.
//
// Written for the shape this harness produces: few samples, very many
// columns. Column values are presorted once per training matrix and the
// order is reused by every tree and every hyperparameter draw.

import type { FeatureMatrix } from "./bind.js";
import { deriveSeed, mulberry32, randInt, sampleWithoutReplacement, type Rng } from "./rng.js";

export interface ForestParams {
  nTrees: number;
  /** null grows trees until every leaf is pure. */
  maxDepth: number | null;
  seed: number;
  /** Split candidates per node; defaults to round(sqrt(columns)). */
  maxFeatures?: number;
}

/** Training matrix in column-major form with integer class labels. */
export class TrainingData {
  readonly n: number;
  readonly f: number;
  readonly classes: string[];
  readonly y: Int32Array;
  readonly columns: Float64Array;
  private orders: Int32Array[] | null = null;

  constructor(matrix: FeatureMatrix) {
    if (matrix.labels === null) {
      throw new Error("training data needs labels");
    }
    if (matrix.rows === 0) {
      throw new Error("training data is empty");
    }
    this.n = matrix.rows;
    this.f = matrix.cols;
    this.classes = [...new Set(matrix.labels)].sort();
    const classIndex = new Map(this.classes.map((label, i) => [label, i]));
    this.y = Int32Array.from(matrix.labels, (label) => classIndex.get(label)!);
    this.columns = new Float64Array(this.n * this.f);
    for (let i = 0; i < this.n; i++) {
      for (let j = 0; j < this.f; j++) {
        this.columns[j * this.n + i] = matrix.values[i * matrix.cols + j];
      }
    }
  }

  value(feature: number, sample: number): number {
    return this.columns[feature * this.n + sample];
  }

  /** Per-column sample order, ascending by value; built once and cached. */
  columnOrders(): Int32Array[] {
    if (this.orders === null) {
      this.orders = [];
      const base = Array.from({ length: this.n }, (_, i) => i);
      for (let j = 0; j < this.f; j++) {
        const offset = j * this.n;
        const sorted = [...base].sort(
          (a, b) => this.columns[offset + a] - this.columns[offset + b]
        );
        this.orders.push(Int32Array.from(sorted));
      }
    }
    return this.orders;
  }
}

interface Tree {
  feature: Int32Array;
  threshold: Float64Array;
  left: Int32Array;
  right: Int32Array;
  leafClass: Int32Array; // -1 on internal nodes
}

export interface TrainedForest {
  params: ForestParams;
  classes: string[];
  /** Out-of-bag accuracy over the training set, percent in [0, 100]. */
  oobScore: number;
  /** Realized depth of each tree (a root-only tree has depth 0). */
  treeDepths: number[];
  predict(matrix: FeatureMatrix): string[];
  /** Percent of rows whose predicted label matches; requires labels. */
  accuracy(matrix: FeatureMatrix): number;
}

interface BuildState {
  data: TrainingData;
  orders: Int32Array[];
  rng: Rng;
  maxDepth: number;
  maxFeatures: number;
  weight: Int32Array; // bootstrap multiplicity of the node being split
  stamp: Int32Array; // node id for which weight[i] is valid
}

function growTree(state: BuildState, samples: Int32Array, bootstrap: Int32Array): Tree {
  const { data } = state;
  const nClasses = data.classes.length;
  const feature: number[] = [];
  const threshold: number[] = [];
  const left: number[] = [];
  const right: number[] = [];
  const leafClass: number[] = [];

  const newNode = (): number => {
    feature.push(-1);
    threshold.push(0);
    left.push(-1);
    right.push(-1);
    leafClass.push(-1);
    return feature.length - 1;
  };

  const classWeight = new Float64Array(nClasses);
  const leftWeight = new Float64Array(nClasses);

  // depth-first build; each frame owns the sample indices present in the node
  const root = newNode();
  const stack: Array<{ node: number; samples: Int32Array; depth: number }> = [
    { node: root, samples, depth: 0 },
  ];

  while (stack.length > 0) {
    const frame = stack.pop()!;
    const nodeSamples = frame.samples;
    const nodeId = frame.node;

    classWeight.fill(0);
    let total = 0;
    for (const i of nodeSamples) {
      classWeight[data.y[i]] += bootstrap[i];
      total += bootstrap[i];
    }
    let majority = 0;
    for (let c = 1; c < nClasses; c++) {
      if (classWeight[c] > classWeight[majority]) majority = c;
    }
    const pure = classWeight[majority] === total;

    if (pure || total < 2 || frame.depth >= state.maxDepth) {
      leafClass[nodeId] = majority;
      continue;
    }

    // mark membership so the presorted column walk can skip foreign samples
    for (const i of nodeSamples) {
      state.weight[i] = bootstrap[i];
      state.stamp[i] = nodeId;
    }

    let totalSq = 0;
    for (let c = 0; c < nClasses; c++) totalSq += classWeight[c] * classWeight[c];

    let bestProxy = -Infinity;
    let bestFeature = -1;
    let bestThreshold = 0;
    const candidates = sampleWithoutReplacement(state.rng, data.f, state.maxFeatures);
    for (const j of candidates) {
      const order = state.orders[j];
      leftWeight.fill(0);
      let leftTotal = 0;
      let leftSq = 0;
      let rightSq = totalSq;
      let prev = NaN;
      for (let k = 0; k < order.length; k++) {
        const i = order[k];
        if (state.stamp[i] !== nodeId) continue;
        const w = state.weight[i];
        const v = data.columns[j * data.n + i];
        if (!Number.isNaN(prev) && v > prev && leftTotal > 0 && leftTotal < total) {
          const proxy =
            leftSq / leftTotal + rightSq / (total - leftTotal);
          if (proxy > bestProxy) {
            bestProxy = proxy;
            bestFeature = j;
            bestThreshold = (prev + v) / 2;
          }
        }
        const c = data.y[i];
        // moving w units of class c to the left updates both squared sums
        leftSq += w * (2 * leftWeight[c] + w);
        const rightCount = classWeight[c] - leftWeight[c];
        rightSq += w * (w - 2 * rightCount);
        leftWeight[c] += w;
        leftTotal += w;
        prev = v;
      }
    }

    if (bestFeature < 0) {
      leafClass[nodeId] = majority; // every candidate column was constant
      continue;
    }

    let leftCount = 0;
    for (const i of nodeSamples) {
      if (data.value(bestFeature, i) <= bestThreshold) leftCount++;
    }
    const leftSamples = new Int32Array(leftCount);
    const rightSamples = new Int32Array(nodeSamples.length - leftCount);
    let li = 0;
    let ri = 0;
    for (const i of nodeSamples) {
      if (data.value(bestFeature, i) <= bestThreshold) leftSamples[li++] = i;
      else rightSamples[ri++] = i;
    }

    feature[nodeId] = bestFeature;
    threshold[nodeId] = bestThreshold;
    const leftId = newNode();
    const rightId = newNode();
    left[nodeId] = leftId;
    right[nodeId] = rightId;
    stack.push({ node: rightId, samples: rightSamples, depth: frame.depth + 1 });
    stack.push({ node: leftId, samples: leftSamples, depth: frame.depth + 1 });
  }

  return {
    feature: Int32Array.from(feature),
    threshold: Float64Array.from(threshold),
    left: Int32Array.from(left),
    right: Int32Array.from(right),
    leafClass: Int32Array.from(leafClass),
  };
}

function treeDepth(tree: Tree): number {
  let deepest = 0;
  const stack: Array<[number, number]> = [[0, 0]];
  while (stack.length > 0) {
    const [node, depth] = stack.pop()!;
    if (tree.leafClass[node] >= 0) {
      deepest = Math.max(deepest, depth);
    } else {
      stack.push([tree.left[node], depth + 1], [tree.right[node], depth + 1]);
    }
  }
  return deepest;
}

function treeLeaf(tree: Tree, row: (feature: number) => number): number {
  let node = 0;
  while (tree.leafClass[node] < 0) {
    node = row(tree.feature[node]) <= tree.threshold[node]
      ? tree.left[node]
      : tree.right[node];
  }
  return tree.leafClass[node];
}

export function trainForest(data: TrainingData, params: ForestParams): TrainedForest {
  const { n, f } = data;
  const nClasses = data.classes.length;
  const maxFeatures = params.maxFeatures ?? Math.max(1, Math.round(Math.sqrt(f)));
  const state: BuildState = {
    data,
    orders: data.columnOrders(),
    rng: mulberry32(0), // replaced per tree
    maxDepth: params.maxDepth ?? Number.POSITIVE_INFINITY,
    maxFeatures,
    weight: new Int32Array(n),
    stamp: new Int32Array(n).fill(-1),
  };

  const trees: Tree[] = [];
  const oobVotes = new Int32Array(n * nClasses);
  const bootstrap = new Int32Array(n);
  for (let t = 0; t < params.nTrees; t++) {
    const rng = mulberry32(deriveSeed(params.seed, t));
    bootstrap.fill(0);
    for (let i = 0; i < n; i++) bootstrap[randInt(rng, n)]++;
    let inBag = 0;
    for (let i = 0; i < n; i++) if (bootstrap[i] > 0) inBag++;
    const samples = new Int32Array(inBag);
    let s = 0;
    for (let i = 0; i < n; i++) if (bootstrap[i] > 0) samples[s++] = i;

    state.rng = rng;
    state.stamp.fill(-1);
    const tree = growTree(state, samples, bootstrap);
    trees.push(tree);

    for (let i = 0; i < n; i++) {
      if (bootstrap[i] === 0) {
        const predicted = treeLeaf(tree, (j) => data.value(j, i));
        oobVotes[i * nClasses + predicted]++;
      }
    }
  }

  let counted = 0;
  let correct = 0;
  for (let i = 0; i < n; i++) {
    let best = -1;
    let bestVotes = 0;
    for (let c = 0; c < nClasses; c++) {
      const votes = oobVotes[i * nClasses + c];
      if (votes > bestVotes) {
        bestVotes = votes;
        best = c;
      }
    }
    if (best >= 0) {
      counted++;
      if (best === data.y[i]) correct++;
    }
  }
  const oobScore = counted > 0 ? (100 * correct) / counted : 0;

  const classes = data.classes;
  const predict = (matrix: FeatureMatrix): string[] => {
    if (matrix.cols !== f) {
      throw new Error(`expected ${f} columns, got ${matrix.cols}`);
    }
    const out: string[] = [];
    const votes = new Int32Array(nClasses);
    for (let i = 0; i < matrix.rows; i++) {
      votes.fill(0);
      const offset = i * matrix.cols;
      for (const tree of trees) {
        votes[treeLeaf(tree, (j) => matrix.values[offset + j])]++;
      }
      let best = 0;
      for (let c = 1; c < nClasses; c++) {
        if (votes[c] > votes[best]) best = c;
      }
      out.push(classes[best]);
    }
    return out;
  };

  return {
    params,
    classes,
    oobScore,
    treeDepths: trees.map(treeDepth),
    predict,
    accuracy(matrix: FeatureMatrix): number {
      if (matrix.labels === null) {
        throw new Error("accuracy needs a labeled matrix");
      }
      if (matrix.rows === 0) return 0;
      const predicted = predict(matrix);
      let good = 0;
      for (let i = 0; i < matrix.rows; i++) {
        if (predicted[i] === matrix.labels[i]) good++;
      }
      return (100 * good) / matrix.rows;
    },
  };
}
