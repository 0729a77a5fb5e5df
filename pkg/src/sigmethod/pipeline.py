"""Composition of augmentations, windows, transform, and rescalings.

A pipeline computes one feature block per (augmentation branch i, window j):
rescale-post of the transform of rescale-pre of window j of branch i.  The
stage order is fixed; blocks are concatenated i-major, j-minor.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .augment import AugmentationSpec, Basepoint, Time
from .errors import ConfigError, FeatureBudgetError
from .rescale import RescaleSpec, rescale_post, rescale_pre
from .series import TimeSeries
from .signature import feature_names, logsignature, signature
from .tensor import logsignature_width, signature_width
from .windows import Dyadic, Global, apply_window, window_count

TRANSFORMS = ("signature", "logsignature")
LAYOUTS = ("flat", "per-window-sequence")


@dataclass(frozen=True)
class PipelineConfig:
    depth: int
    augmentation: AugmentationSpec = AugmentationSpec(())
    window: object = field(default_factory=Global)
    transform: str = "signature"
    rescale: RescaleSpec = field(default_factory=RescaleSpec)
    feature_limit: int = 100000
    layout: str = "flat"

    def __post_init__(self):
        if self.depth < 1:
            raise ConfigError(f"depth must be >= 1, got {self.depth}")
        if self.transform not in TRANSFORMS:
            raise ConfigError(
                f"transform must be one of {TRANSFORMS}, got {self.transform!r}"
            )
        if self.feature_limit < 1:
            raise ConfigError(
                f"feature_limit must be positive, got {self.feature_limit}"
            )
        if self.layout not in LAYOUTS:
            raise ConfigError(f"layout must be one of {LAYOUTS}, got {self.layout!r}")


@dataclass(frozen=True)
class FeatureSet:
    """Flat feature vector of one sample with stable per-column names.

    The vector concatenates blocks z_(i,j) for branch i = 1..p and window
    j = 1..w, i-major; each block has per_block entries named
    "a{i}|w{j}|<feature>".
    """

    values: np.ndarray
    names: tuple
    branches: int
    windows: int
    per_block: int
    layout: str = "flat"

    def __post_init__(self):
        expected = self.branches * self.windows * self.per_block
        if self.values.shape != (expected,) or len(self.names) != expected:
            raise ValueError(
                f"feature set shape mismatch: {self.values.shape} values, "
                f"{len(self.names)} names, expected {expected}"
            )

    @property
    def width(self) -> int:
        return self.values.shape[0]

    def as_sequence(self) -> np.ndarray:
        """(windows, branches * per_block) matrix, one row per window in
        window order; this is the sequence view for downstream models."""
        p, w, L = self.branches, self.windows, self.per_block
        return self.values.reshape(p, w, L).transpose(1, 0, 2).reshape(w, p * L)


def shape_of(config: PipelineConfig, d: int, n: int):
    """(e, p, w, per-block length) of the pipeline on a d-channel, n-point
    series, computed without touching data."""
    e, p, n_aug = config.augmentation.output_shape(d, n)
    w = window_count(config.window, n_aug)
    if config.transform == "signature":
        per_block = signature_width(e, config.depth)
    else:
        per_block = logsignature_width(e, config.depth)
    return e, p, w, per_block


def predict_feature_count(config: PipelineConfig, d: int, n: int) -> int:
    """Total feature width p * w * per-block length; no data is read."""
    _, p, w, per_block = shape_of(config, d, n)
    return p * w * per_block


def _check_budget(config: PipelineConfig, d: int, n: int) -> int:
    total = predict_feature_count(config, d, n)
    if total > config.feature_limit:
        raise FeatureBudgetError(
            f"pipeline would produce {total} features, exceeding the limit "
            f"of {config.feature_limit}"
        )
    return total


def run_pipeline(config: PipelineConfig, ts: TimeSeries) -> FeatureSet:
    """Extract features from one series per the fixed stage order."""
    _check_budget(config, ts.dimension, ts.length)
    e, _, _, per_block = shape_of(config, ts.dimension, ts.length)
    transform = signature if config.transform == "signature" else logsignature

    blocks = []
    names = []
    branches = config.augmentation.apply(ts)
    n_windows = None
    for i, branch in enumerate(branches, start=1):
        windows = apply_window(config.window, branch)
        n_windows = len(windows)
        block_names = feature_names(e, config.depth, config.transform)
        for j, win in enumerate(windows, start=1):
            if config.rescale.mode == "pre":
                win = rescale_pre(win, config.depth)
            feats = transform(win, config.depth).values
            if config.rescale.mode == "post":
                feats = rescale_post(feats, e, config.depth, config.transform)
            blocks.append(feats)
            names.extend(f"a{i}|w{j}|{name}" for name in block_names)
    return FeatureSet(
        values=np.concatenate(blocks),
        names=tuple(names),
        branches=len(branches),
        windows=n_windows,
        per_block=per_block,
        layout=config.layout,
    )


def canonical_config(
    depth: int,
    dyadic_depth: int,
    parametrization_invariant: bool = False,
    translation_invariant: bool = False,
    rescale: RescaleSpec = RescaleSpec(),
    feature_limit: int = 100000,
) -> PipelineConfig:
    """Domain-agnostic default: time then basepoint augmentations (each
    dropped when the matching invariance is requested), a hierarchical
    dyadic window, and the plain signature."""
    steps = []
    if not parametrization_invariant:
        steps.append(Time())
    if not translation_invariant:
        steps.append(Basepoint())
    return PipelineConfig(
        depth=depth,
        augmentation=AugmentationSpec(tuple(steps)),
        window=Dyadic(dyadic_depth),
        transform="signature",
        rescale=rescale,
        feature_limit=feature_limit,
    )


def run_canonical(
    ts: TimeSeries,
    depth: int,
    dyadic_depth: int,
    parametrization_invariant: bool = False,
    translation_invariant: bool = False,
) -> FeatureSet:
    config = canonical_config(
        depth, dyadic_depth, parametrization_invariant, translation_invariant
    )
    return run_pipeline(config, ts)


def _run_one(args):
    config, ts = args
    return run_pipeline(config, ts).values


def run_many(config: PipelineConfig, samples, workers: int = 1):
    """Feature matrix (len(samples) x width) plus column names.

    All samples must yield the same width; window families whose count
    depends on the series length need equal-length samples (or a
    count-based window).  Work is split per sample across `workers`
    processes; with one worker everything runs inline.
    """
    if not samples:
        return np.empty((0, 0)), ()
    widths = {predict_feature_count(config, s.dimension, s.length) for s in samples}
    if len(widths) > 1:
        raise ConfigError(
            "feature width varies across samples "
            f"({sorted(widths)}); use a count-based window "
            "(sliding_count/expanding_count), global, or dyadic windows "
            "with equal-length samples"
        )
    for s in samples:
        _check_budget(config, s.dimension, s.length)

    if workers <= 1:
        rows = [run_pipeline(config, s).values for s in samples]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, [(config, s) for s in samples], chunksize=8))

    e, p, w, _ = shape_of(config, samples[0].dimension, samples[0].length)
    block_names = feature_names(e, config.depth, config.transform)
    names = tuple(
        f"a{i}|w{j}|{name}"
        for i in range(1, p + 1)
        for j in range(1, w + 1)
        for name in block_names
    )
    return np.vstack(rows), names
