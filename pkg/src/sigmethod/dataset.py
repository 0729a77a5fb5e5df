"""Dataset parsing, channel normalization, and feature serialization.

Two input formats are supported: the UEA archive ".ts" text format (regular
sampling, labels inline) and a long CSV format (sample_id, timestamp,
channel_1..channel_d[, label]) that also covers irregular sampling and
varying lengths.  Feature matrices are written as CSV or ndjson with
shortest-round-trip float formatting, so written values re-read exactly.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import FitError, ParseError
from .series import TimeSeries

SPLITS = ("train", "test", "unsplit")


def toy_dataset_path() -> Path:
    """Path of the bundled 8-sample toy dataset (two spiral classes)."""
    return Path(__file__).parent / "data" / "toy.ts"


@dataclass(frozen=True)
class NormalizationStats:
    """Pooled per-channel moments fitted on one split."""

    mean: np.ndarray
    std: np.ndarray
    zero_variance: np.ndarray
    fitted_on: str = "train"

    @property
    def dimension(self) -> int:
        return self.mean.shape[0]


@dataclass(frozen=True)
class LabeledDataset:
    samples: tuple
    labels: tuple | None = None
    split: str = "unsplit"
    stats: NormalizationStats | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.samples):
            raise ValueError(
                f"{len(self.samples)} samples but {len(self.labels)} labels"
            )
        if self.split not in SPLITS:
            raise ValueError(f"split must be one of {SPLITS}, got {self.split!r}")
        dims = {s.dimension for s in self.samples}
        if len(dims) > 1:
            raise ValueError(f"samples disagree on dimension: {sorted(dims)}")

    def __len__(self):
        return len(self.samples)

    @property
    def dimension(self) -> int:
        if not self.samples:
            return 0
        return self.samples[0].dimension

    def length_range(self):
        if not self.samples:
            return (0, 0)
        lengths = [s.length for s in self.samples]
        return (min(lengths), max(lengths))

    def class_histogram(self) -> Counter:
        return Counter(self.labels) if self.labels is not None else Counter()


# ---------------------------------------------------------------------------
# .ts format

_TS_FLAG_DIRECTIVES = ("timestamps", "missing", "univariate", "equallength")


def _infer_split(path) -> str:
    stem = Path(path).stem.lower()
    if stem.endswith("_train"):
        return "train"
    if stem.endswith("_test"):
        return "test"
    return "unsplit"


def parse_ts_file(source, split: str = "infer") -> LabeledDataset:
    """Parse a ".ts" file from a path or a file-like object.

    Header directives are case-insensitive; the supported set is
    problemName, timeStamps, missing, univariate, dimension(s),
    equalLength, seriesLength, classLabel, data.  Anything else, and any
    "?" missing value, is rejected with the offending line number.
    """
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        if split == "infer":
            split = "unsplit"
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
        if split == "infer":
            split = _infer_split(source)

    header: dict = {}
    classes: list | None = None
    in_data = False
    samples: list = []
    labels: list = []
    dim_expected: int | None = None

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if not in_data:
            if not line.startswith("@"):
                raise ParseError(f"expected a @directive before @data, got {line!r}", lineno)
            tokens = line.split()
            name = tokens[0][1:].lower()
            if name == "data":
                if len(tokens) > 1:
                    raise ParseError("@data takes no arguments", lineno)
                in_data = True
                continue
            if name == "problemname":
                header["problemname"] = " ".join(tokens[1:])
            elif name in _TS_FLAG_DIRECTIVES:
                if len(tokens) != 2 or tokens[1].lower() not in ("true", "false"):
                    raise ParseError(f"@{name} expects true or false", lineno)
                header[name] = tokens[1].lower() == "true"
            elif name in ("dimension", "dimensions"):
                try:
                    header["dimensions"] = int(tokens[1])
                except (IndexError, ValueError):
                    raise ParseError(f"@{name} expects an integer", lineno) from None
            elif name == "serieslength":
                try:
                    header["serieslength"] = int(tokens[1])
                except (IndexError, ValueError):
                    raise ParseError("@seriesLength expects an integer", lineno) from None
            elif name == "classlabel":
                if len(tokens) < 2 or tokens[1].lower() not in ("true", "false"):
                    raise ParseError("@classLabel expects true or false", lineno)
                if tokens[1].lower() == "true":
                    classes = tokens[2:]
                    if not classes:
                        raise ParseError("@classLabel true needs class names", lineno)
                else:
                    classes = None
            else:
                raise ParseError(f"unknown directive @{name}", lineno)
            continue

        # data section
        fields = line.split(":")
        if classes is not None:
            if len(fields) < 2:
                raise ParseError("record is missing the class label field", lineno)
            label = fields[-1].strip()
            if label not in classes:
                raise ParseError(f"unknown class label {label!r}", lineno)
            dims = fields[:-1]
            labels.append(label)
        else:
            dims = fields
        if dim_expected is None:
            dim_expected = len(dims)
            declared = header.get("dimensions")
            if declared is not None and declared != dim_expected:
                raise ParseError(
                    f"record has {dim_expected} dimensions, header declares {declared}",
                    lineno,
                )
            if header.get("univariate") and dim_expected != 1:
                raise ParseError(
                    f"record has {dim_expected} dimensions in a univariate file",
                    lineno,
                )
        elif len(dims) != dim_expected:
            raise ParseError(
                f"record has {len(dims)} dimensions, expected {dim_expected}", lineno
            )
        channels = []
        for dim in dims:
            entries = [v.strip() for v in dim.split(",")]
            if "?" in entries:
                raise ParseError("missing values (?) are not supported", lineno)
            try:
                channels.append([float(v) for v in entries])
            except ValueError as exc:
                raise ParseError(f"bad value in record: {exc}", lineno) from None
        lengths = {len(c) for c in channels}
        if len(lengths) > 1:
            raise ParseError(
                f"dimensions have unequal lengths {sorted(lengths)}", lineno
            )
        expected_len = header.get("serieslength")
        if expected_len is not None and lengths != {expected_len}:
            raise ParseError(
                f"record length {lengths.pop()} does not match "
                f"@seriesLength {expected_len}",
                lineno,
            )
        samples.append(TimeSeries(np.array(channels, dtype=np.float64).T))

    if not in_data:
        raise ParseError("file has no @data section")
    if header.get("timestamps"):
        raise ParseError(
            "timestamped .ts files are not supported; use the CSV long format"
        )
    return LabeledDataset(
        samples=tuple(samples),
        labels=tuple(labels) if classes is not None else None,
        split=split,
    )


# ---------------------------------------------------------------------------
# CSV long format


def parse_csv_long(source, split: str = "infer") -> LabeledDataset:
    """Parse the long format: sample_id, timestamp, channel_1..d[, label].

    Rows of one sample must be contiguous with strictly increasing
    timestamps; the label, when the column is present, must be constant
    within a sample.
    """
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        if split == "infer":
            split = "unsplit"
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
        if split == "infer":
            split = _infer_split(source)

    reader = csv.reader(io.StringIO(text))
    try:
        head = next(reader)
    except StopIteration:
        raise ParseError("empty file, expected a header row", 1) from None
    head = [h.strip() for h in head]
    if len(head) < 3 or head[0] != "sample_id" or head[1] != "timestamp":
        raise ParseError(
            "header must start with sample_id, timestamp, channel_1, ...", 1
        )
    has_label = head[-1] == "label"
    channel_cols = head[2 : -1 if has_label else len(head)]
    expected = [f"channel_{i}" for i in range(1, len(channel_cols) + 1)]
    if channel_cols != expected:
        raise ParseError(
            f"channel columns must be named {expected}, got {channel_cols}", 1
        )
    d = len(channel_cols)

    groups: list = []  # (sample_id, rows, label, first_lineno)
    seen: set = set()
    current = None
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(head):
            raise ParseError(
                f"expected {len(head)} columns, got {len(row)}", lineno
            )
        sid = row[0].strip()
        label = row[-1].strip() if has_label else None
        try:
            t = float(row[1])
            vals = [float(v) for v in row[2 : 2 + d]]
        except ValueError as exc:
            raise ParseError(f"bad number: {exc}", lineno) from None
        if current is None or sid != current[0]:
            if sid in seen:
                raise ParseError(
                    f"rows of sample {sid!r} are not contiguous", lineno
                )
            seen.add(sid)
            current = (sid, [], label, lineno)
            groups.append(current)
        if has_label and label != current[2]:
            raise ParseError(
                f"sample {sid!r} has conflicting labels "
                f"{current[2]!r} and {label!r}",
                lineno,
            )
        current[1].append((t, vals))

    samples = []
    labels = []
    for sid, rows, label, first_lineno in groups:
        ts = np.array([r[0] for r in rows])
        if np.any(np.diff(ts) <= 0):
            raise ParseError(
                f"timestamps of sample {sid!r} are not strictly increasing",
                first_lineno,
            )
        values = np.array([r[1] for r in rows])
        samples.append(TimeSeries(values, timestamps=ts))
        labels.append(label)
    return LabeledDataset(
        samples=tuple(samples),
        labels=tuple(labels) if has_label else None,
        split=split,
    )


def write_csv_long(dataset: LabeledDataset, path) -> None:
    """Serialize to the long CSV format; inverse of parse_csv_long."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        d = dataset.dimension
        head = ["sample_id", "timestamp"] + [f"channel_{i}" for i in range(1, d + 1)]
        if dataset.labels is not None:
            head.append("label")
        writer.writerow(head)
        for idx, sample in enumerate(dataset.samples):
            sid = f"s{idx + 1}"
            for t, row in zip(sample.timestamps, sample.values):
                out = [sid, repr(float(t))] + [repr(float(v)) for v in row]
                if dataset.labels is not None:
                    out.append(dataset.labels[idx])
                writer.writerow(out)


# ---------------------------------------------------------------------------
# normalization


def fit_normalizer(dataset: LabeledDataset) -> NormalizationStats:
    """Pooled per-channel mean and population std over all observations.

    Refuses to fit on the test split; zero-variance channels are flagged so
    apply_normalizer centers them without dividing.
    """
    if dataset.split == "test":
        raise FitError("refusing to fit normalization statistics on the test split")
    if not dataset.samples:
        raise FitError("cannot fit normalization on an empty dataset")
    pooled = np.concatenate([s.values for s in dataset.samples], axis=0)
    mean = pooled.mean(axis=0)
    std = pooled.std(axis=0)  # population std: "unit variance" on the pool
    zero = std < 1e-12
    return NormalizationStats(
        mean=mean, std=std, zero_variance=zero, fitted_on=dataset.split
    )


def save_stats(stats: NormalizationStats, path) -> None:
    """Persist fitted statistics as JSON so a later run can reuse them."""
    payload = {
        "mean": [float(v) for v in stats.mean],
        "std": [float(v) for v in stats.std],
        "zero_variance": [bool(v) for v in stats.zero_variance],
        "fitted_on": stats.fitted_on,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_stats(path) -> NormalizationStats:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        return NormalizationStats(
            mean=np.asarray(payload["mean"], dtype=np.float64),
            std=np.asarray(payload["std"], dtype=np.float64),
            zero_variance=np.asarray(payload["zero_variance"], dtype=bool),
            fitted_on=payload["fitted_on"],
        )
    except (OSError, KeyError, ValueError) as exc:
        raise FitError(f"cannot load normalization statistics from {path}: {exc}") from None


def apply_normalizer(stats: NormalizationStats, dataset: LabeledDataset) -> LabeledDataset:
    """Center and scale every sample with the fitted statistics."""
    if dataset.dimension and dataset.dimension != stats.dimension:
        raise FitError(
            f"statistics were fitted on {stats.dimension} channels, "
            f"dataset has {dataset.dimension}"
        )
    scale = np.where(stats.zero_variance, 1.0, stats.std)
    samples = tuple(
        TimeSeries((s.values - stats.mean) / scale, timestamps=s.timestamps)
        for s in dataset.samples
    )
    return replace(dataset, samples=samples, stats=stats)


# ---------------------------------------------------------------------------
# feature output


def write_features(matrix, names, path, fmt: str = "csv", labels=None) -> None:
    """Write a (samples x features) matrix with stable column names.

    Floats are formatted with repr, the shortest representation that
    round-trips, so re-reading reproduces the matrix bit for bit.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {matrix.shape}")
    if matrix.shape[1] != len(names):
        raise ValueError(f"{matrix.shape[1]} columns but {len(names)} names")
    if labels is not None and len(labels) != matrix.shape[0]:
        raise ValueError(f"{matrix.shape[0]} rows but {len(labels)} labels")

    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            head = list(names) + (["label"] if labels is not None else [])
            writer.writerow(head)
            for i, row in enumerate(matrix):
                out = [repr(float(v)) for v in row]
                if labels is not None:
                    out.append(labels[i])
                writer.writerow(out)
    elif fmt == "ndjson":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for i, row in enumerate(matrix):
                obj = {"features": [float(v) for v in row]}
                if labels is not None:
                    obj["label"] = labels[i]
                fh.write(json.dumps(obj) + "\n")
    else:
        raise ValueError(f"unknown feature format {fmt!r}")


def read_features_csv(path):
    """Read a feature CSV back into (matrix, names, labels or None)."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        head = next(reader)
        has_label = head and head[-1] == "label"
        names = tuple(head[:-1] if has_label else head)
        rows = []
        labels = []
        for row in reader:
            if has_label:
                labels.append(row[-1])
                row = row[:-1]
            rows.append([float(v) for v in row])
    matrix = np.array(rows, dtype=np.float64).reshape(len(rows), len(names))
    return matrix, names, (labels if has_label else None)
