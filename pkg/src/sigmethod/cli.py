"""Command-line front end: dataset in, feature file out.

Exit codes: 0 success, 2 configuration error, 3 dataset parse error,
4 feature budget exceeded, 1 internal error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .config import OVERRIDE_KEYS, load_run_config, resolve_input_format
from .dataset import (
    apply_normalizer,
    fit_normalizer,
    load_stats,
    parse_csv_long,
    parse_ts_file,
    save_stats,
    write_features,
)
from .errors import (
    ConfigError,
    FeatureBudgetError,
    FitError,
    ParseError,
    SigmethodError,
)
from .pipeline import predict_feature_count, run_many, shape_of
from .series import TimeSeries


def cmd_extract(args) -> int:
    overrides = {
        key: getattr(args, key) for key in OVERRIDE_KEYS if getattr(args, key) is not None
    }
    config = load_run_config(args.config, overrides)

    if args.dry_run:
        # planning only: the data file is never opened
        d, n = config.input_dimension, config.input_length
        if d < 1 or n < 2:
            raise ConfigError(
                "--dry-run predicts the feature width from input.dimension and "
                "input.length; set both in the config (or as overrides)"
            )
        e, p, w, per_block = shape_of(config.pipeline, d, n)
        total = p * w * per_block
        status = (
            "within feature limit"
            if total <= config.pipeline.feature_limit
            else f"EXCEEDS feature limit {config.pipeline.feature_limit}"
        )
        print(
            f"dry run: d={d} n={n} e={e} p={p} w={w} per_branch={per_block} "
            f"width={total} ({status})"
        )
        return 0

    started = time.perf_counter()
    fmt = resolve_input_format(config)
    parse = parse_ts_file if fmt == "ts" else parse_csv_long
    dataset = parse(config.input_path, split=config.input_split)

    if config.normalize:
        stats = None
        if config.stats_path and Path(config.stats_path).exists():
            stats = load_stats(config.stats_path)
        if stats is None:
            stats = fit_normalizer(dataset)
            if config.stats_path:
                save_stats(stats, config.stats_path)
        dataset = apply_normalizer(stats, dataset)

    matrix, names = run_many(
        config.pipeline, list(dataset.samples), workers=config.workers
    )
    labels = list(dataset.labels) if dataset.labels is not None else None
    write_features(
        matrix, names, config.output_path, fmt=config.output_format, labels=labels
    )
    wall = time.perf_counter() - started

    if dataset.samples:
        _, p, w, per_block = shape_of(
            config.pipeline, dataset.dimension, dataset.samples[0].length
        )
    else:
        p = w = per_block = 0
    print(
        f"samples={len(dataset)} d={dataset.dimension} p={p} w={w} "
        f"per_branch={per_block} width={matrix.shape[1]} wall={wall:.3f}s"
    )
    return 0


def cmd_inspect(args) -> int:
    path = args.path
    fmt = args.format
    if fmt == "infer":
        lower = path.lower()
        if lower.endswith(".ts"):
            fmt = "ts"
        elif lower.endswith(".csv"):
            fmt = "csv"
        else:
            raise ConfigError(
                f"cannot infer format of {path!r}; pass --format ts|csv"
            )
    dataset = (parse_ts_file if fmt == "ts" else parse_csv_long)(path)

    lo, hi = dataset.length_range()
    print(f"path: {path}")
    print(f"samples: {len(dataset)}")
    print(f"dimension: {dataset.dimension}")
    print(f"length: {lo}..{hi}")
    if dataset.labels is not None:
        hist = dataset.class_histogram()
        parts = " ".join(f"{label}={count}" for label, count in sorted(hist.items()))
        print(f"classes: {parts}")
    else:
        print("classes: unlabeled")
    steps = np.concatenate(
        [np.diff(s.timestamps) for s in dataset.samples if s.length > 1]
    ) if any(s.length > 1 for s in dataset.samples) else np.empty(0)
    if steps.size == 0:
        print("sampling: n/a")
    elif np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
        print(f"sampling: regular (step {steps[0]:g})")
    else:
        print(f"sampling: irregular (step {steps.min():g}..{steps.max():g})")
    return 0


def _selftest_laws(rng, quick):
    """Each law returns (passed, total) over synthetic draws."""
    from .augment import augment_time
    from .pipeline import PipelineConfig, run_pipeline
    from .signature import signature, signature_oracle, signature_tensor
    from .tensor import tensor_mul
    from .windows import Dyadic

    draws = 4 if quick else 10

    def chen_identity():
        passed = 0
        for _ in range(draws):
            d = int(rng.integers(1, 4))
            x = rng.standard_normal((int(rng.integers(2, 7)), d))
            y = rng.standard_normal((int(rng.integers(2, 7)), d))
            y[0] = x[-1]
            joint = np.concatenate([x, y[1:]])
            prod = tensor_mul(
                signature_tensor(TimeSeries(x), 3), signature_tensor(TimeSeries(y), 3)
            )
            whole = signature_tensor(TimeSeries(joint), 3)
            passed += prod.allclose(whole, rtol=1e-10, atol=1e-12)
        return passed, draws

    def shuffle_identity():
        passed = 0
        for _ in range(draws):
            d = int(rng.integers(2, 4))
            t = signature_tensor(TimeSeries(rng.standard_normal((6, d))), 2)
            lvl1, lvl2 = t.levels[1], t.levels[2].reshape(d, d)
            ok = all(
                np.isclose(lvl2[i, j] + lvl2[j, i], lvl1[i] * lvl1[j], rtol=1e-10, atol=1e-12)
                for i in range(d)
                for j in range(d)
            )
            passed += ok
        return passed, draws

    def oracle_agreement():
        total = 2 if quick else 4
        passed = 0
        for _ in range(total):
            ts = TimeSeries(rng.standard_normal((int(rng.integers(2, 8)), 2)))
            a = signature(ts, 3).values
            b = signature_oracle(ts, 3, 800).values
            rel = np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1.0)
            passed += rel < 1e-6
        return passed, total

    def reparametrization():
        passed = 0
        for _ in range(draws):
            vals = rng.standard_normal((6, 2))
            seg = int(rng.integers(0, 5))
            mid = 0.5 * (vals[seg] + vals[seg + 1])
            refined = np.insert(vals, seg + 1, mid, axis=0)
            a = signature(TimeSeries(vals), 3).values
            b = signature(TimeSeries(refined), 3).values
            passed += np.allclose(a, b, rtol=1e-10, atol=1e-12)
        return passed, draws

    def translation():
        passed = 0
        for _ in range(draws):
            vals = rng.standard_normal((6, 2))
            shift = rng.standard_normal(2) * 5
            a = signature(TimeSeries(vals), 3).values
            b = signature(TimeSeries(vals + shift), 3).values
            passed += np.allclose(a, b, rtol=1e-10, atol=1e-12)
        return passed, draws

    def parametrization_sensitivity():
        # with the time augmentation, refining the sampling must change features
        vals = np.array([[0.0], [1.0], [3.0]])
        refined = np.array([[0.0], [0.5], [1.0], [3.0]])
        a = signature(augment_time(TimeSeries(vals)), 2).values
        b = signature(augment_time(TimeSeries(refined)), 2).values
        return int(np.max(np.abs(a - b)) > 1e-3), 1

    def pipeline_width():
        cfg = PipelineConfig(depth=2, window=Dyadic(2))
        ts = TimeSeries(rng.standard_normal((8, 2)))
        out = run_pipeline(cfg, ts)
        return int(out.width == predict_feature_count(cfg, 2, 8)), 1

    laws = [
        ("chen-identity", chen_identity),
        ("shuffle-identity", shuffle_identity),
        ("reparametrization-invariance", reparametrization),
        ("translation-invariance", translation),
        ("parametrization-sensitivity", parametrization_sensitivity),
        ("pipeline-width", pipeline_width),
    ]
    if not quick:
        laws.insert(2, ("oracle-agreement", oracle_agreement))
    return laws


def cmd_selftest(args) -> int:
    rng = np.random.default_rng(0)
    ok = True
    for name, law in _selftest_laws(rng, args.quick):
        passed, total = law()
        good = passed == total
        ok = ok and good
        print(f"{name}: {passed}/{total} {'ok' if good else 'FAIL'}")
    if args.inject_fault:
        print("injected-fault: 0/1 FAIL")
        ok = False
    if not ok:
        print("selftest FAILED")
        return 1
    print("selftest passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmethod",
        description="Signature feature extraction for multivariate time series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extract", help="run a config file: dataset -> features")
    p_ext.add_argument("--config", required=True, help="path of the YAML run config")
    p_ext.add_argument(
        "--dry-run",
        action="store_true",
        help="print the predicted feature width and exit without reading data",
    )
    for key in OVERRIDE_KEYS:
        p_ext.add_argument(f"--{key}", dest=key, metavar="VALUE", help=argparse.SUPPRESS)
    p_ext.set_defaults(func=cmd_extract)

    p_ins = sub.add_parser("inspect", help="summarize a dataset file")
    p_ins.add_argument("path")
    p_ins.add_argument("--format", choices=["ts", "csv", "infer"], default="infer")
    p_ins.set_defaults(func=cmd_inspect)

    p_st = sub.add_parser("selftest", help="run the built-in invariant suite")
    p_st.add_argument("--quick", action="store_true", help="run a reduced subset")
    p_st.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p_st.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except FeatureBudgetError as exc:
        print(f"feature budget exceeded: {exc}", file=sys.stderr)
        return 4
    except SigmethodError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # keep the promise of numeric exit codes
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
