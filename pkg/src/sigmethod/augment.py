"""Path augmentations applied before signature computation.

Each augmentation maps one series to one or more transformed series.  A
fan-out step (one producing several series) may appear only once, as the
last step of a composed spec, so the branch count of a pipeline is simply
the fan-out of its final step.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InvalidProjectionError, TooShortError
from .series import TimeSeries


def augment_time(ts: TimeSeries) -> TimeSeries:
    """Prepend the timestamps as channel 1; output dimension d+1."""
    values = np.column_stack([ts.timestamps, ts.values])
    return TimeSeries(values, timestamps=ts.timestamps)


def augment_basepoint(ts: TimeSeries) -> TimeSeries:
    """Prepend the zero vector, making the path start at the origin."""
    values = np.concatenate([np.zeros((1, ts.dimension)), ts.values], axis=0)
    t = ts.timestamps
    # prepended timestamp mirrors the first step so a regular grid stays regular
    step = t[1] - t[0] if ts.length >= 2 else 1.0
    timestamps = np.concatenate([[t[0] - step], t])
    return TimeSeries(values, timestamps=timestamps)


def augment_invisibility_reset(ts: TimeSeries) -> TimeSeries:
    """Add a visibility channel that is 1 along the path, then reset to 0.

    Output pattern ((1,x_1),...,(1,x_n),(0,x_n),(0,0)): the extra channel
    makes absolute position recoverable while the path itself also returns
    to the origin.
    """
    n, d = ts.length, ts.dimension
    flag = np.concatenate([np.ones(n), [0.0, 0.0]])
    body = np.concatenate([ts.values, ts.values[-1:], np.zeros((1, d))], axis=0)
    values = np.column_stack([flag, body])
    t = ts.timestamps
    step = t[-1] - t[-2] if n >= 2 else 1.0
    timestamps = np.concatenate([t, [t[-1] + step, t[-1] + 2 * step]])
    return TimeSeries(values, timestamps=timestamps)


def augment_lead_lag(ts: TimeSeries, lags=(1,)) -> TimeSeries:
    """Interleave the series with lagged copies of itself.

    For the default single lag the output is the staircase
    (x_1,x_1),(x_2,x_1),(x_2,x_2),...,(x_n,x_n): the lead block advances one
    step ahead of the lag block, so their depth-2 signature cross terms pick
    up the quadratic variation of the series.  A list of lags produces
    (len(lags)+1)*d channels, lead block first, then one block per lag in
    the given order; timestamps are re-indexed 1..output length.
    """
    lags = tuple(int(v) for v in lags)
    if not lags or any(v < 1 for v in lags) or len(set(lags)) != len(lags):
        raise ConfigError(f"lags must be distinct positive integers, got {lags}")
    if ts.length < 2:
        raise TooShortError(f"lead-lag needs at least 2 points, got {ts.length}")
    n = ts.length
    dilation = max(lags) + 1
    out_len = dilation * (n - 1) + 1
    m = np.arange(out_len)

    def walk(offsets):
        idx = np.clip(offsets // dilation, 0, n - 1)
        return ts.values[idx]

    blocks = [walk(m + (dilation - 1))]  # lead
    blocks.extend(walk(m + (dilation - 1) - lag) for lag in lags)
    return TimeSeries(np.concatenate(blocks, axis=1))


def augment_coordinate_projection(ts: TimeSeries, k: int, include_time: bool = False):
    """One series per ordered k-tuple of distinct channels; count d!/(d-k)!."""
    d = ts.dimension
    if not 1 <= k <= 3:
        raise InvalidProjectionError(f"tuple size must be 1, 2 or 3, got {k}")
    if k > d:
        raise InvalidProjectionError(f"cannot pick {k} distinct channels from {d}")
    out = []
    for combo in itertools.permutations(range(d), k):
        values = ts.values[:, list(combo)]
        if include_time:
            values = np.column_stack([ts.timestamps, values])
        out.append(TimeSeries(values, timestamps=ts.timestamps))
    return out


def augment_affine_projection(ts: TimeSeries, e: int, p: int, seed: int = 0, matrices=None):
    """Project onto p random e-dimensional affine images of the channels.

    Matrices default to i.i.d. N(0,1)/sqrt(d) entries with zero bias, drawn
    from a generator seeded with `seed`, so runs are reproducible; explicit
    (A, b) pairs may be supplied instead.
    """
    d = ts.dimension
    if e < 1 or p < 1:
        raise ConfigError(f"projection needs e >= 1 and p >= 1, got e={e}, p={p}")
    if matrices is None:
        rng = np.random.default_rng(seed)
        matrices = [
            (rng.standard_normal((e, d)) / np.sqrt(d), np.zeros(e)) for _ in range(p)
        ]
    if len(matrices) != p:
        raise ConfigError(f"expected {p} matrix pairs, got {len(matrices)}")
    out = []
    for A, b in matrices:
        A = np.asarray(A, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        if A.shape != (e, d) or b.shape != (e,):
            raise ConfigError(
                f"projection matrices must have shapes ({e},{d}) and ({e},), "
                f"got {A.shape} and {b.shape}"
            )
        out.append(TimeSeries(ts.values @ A.T + b, timestamps=ts.timestamps))
    return out


# ---------------------------------------------------------------------------
# Composable step objects


@dataclass(frozen=True)
class Time:
    fan_out = 1

    def apply(self, ts):
        return [augment_time(ts)]

    def shape(self, d, n):
        return d + 1, n

    def text(self):
        return "time"


@dataclass(frozen=True)
class Basepoint:
    fan_out = 1

    def apply(self, ts):
        return [augment_basepoint(ts)]

    def shape(self, d, n):
        return d, n + 1

    def text(self):
        return "basepoint"


@dataclass(frozen=True)
class InvisibilityReset:
    fan_out = 1

    def apply(self, ts):
        return [augment_invisibility_reset(ts)]

    def shape(self, d, n):
        return d + 1, n + 2

    def text(self):
        return "invisibility"


@dataclass(frozen=True)
class LeadLag:
    lags: tuple = (1,)
    fan_out = 1

    def apply(self, ts):
        return [augment_lead_lag(ts, self.lags)]

    def shape(self, d, n):
        return (len(self.lags) + 1) * d, (max(self.lags) + 1) * (n - 1) + 1

    def text(self):
        return "leadlag(" + ",".join(map(str, self.lags)) + ")"


@dataclass(frozen=True)
class CoordinateProjection:
    k: int
    include_time: bool = False

    @property
    def fan_out(self):
        return None  # depends on d

    def apply(self, ts):
        return augment_coordinate_projection(ts, self.k, self.include_time)

    def shape(self, d, n):
        return self.k + (1 if self.include_time else 0), n

    def count(self, d):
        if self.k > d:
            raise InvalidProjectionError(
                f"cannot pick {self.k} distinct channels from {d}"
            )
        c = 1
        for i in range(self.k):
            c *= d - i
        return c

    def text(self):
        return f"project({self.k},time)" if self.include_time else f"project({self.k})"


@dataclass(frozen=True)
class AffineProjection:
    e: int
    p: int
    seed: int = 0

    @property
    def fan_out(self):
        return self.p

    def apply(self, ts):
        return augment_affine_projection(ts, self.e, self.p, seed=self.seed)

    def shape(self, d, n):
        return self.e, n

    def count(self, d):
        return self.p

    def text(self):
        return f"affine({self.e},{self.p})"


@dataclass(frozen=True)
class AugmentationSpec:
    """Ordered list of augmentation steps, applied left to right."""

    steps: tuple = ()

    def __post_init__(self):
        for i, step in enumerate(self.steps):
            if isinstance(step, (CoordinateProjection, AffineProjection)):
                if i != len(self.steps) - 1:
                    raise ConfigError(
                        "a fan-out step must be the last step of the spec"
                    )

    def apply(self, ts: TimeSeries):
        out = [ts]
        for step in self.steps:
            out = [piece for series in out for piece in step.apply(series)]
        return out

    def output_shape(self, d: int, n: int):
        """(channels e, branch count p, length) without touching data."""
        p = 1
        for step in self.steps:
            if isinstance(step, (CoordinateProjection, AffineProjection)):
                p = step.count(d)
            d, n = step.shape(d, n)
        return d, p, n

    def text(self):
        return ",".join(step.text() for step in self.steps)

    @staticmethod
    def parse(text: str, seed: int = 0) -> "AugmentationSpec":
        """Parse the config form, e.g. "time,basepoint" or "time,leadlag(1)".

        Step tokens: time | basepoint | invisibility | leadlag(l1,...) |
        project(k[,time]) | affine(e,p).  An empty string is the identity.
        Affine steps draw their matrices from `seed`.
        """
        text = text.strip()
        if not text:
            return AugmentationSpec(())
        steps = []
        # split on commas that are not inside parentheses
        for token in re.split(r",(?![^()]*\))", text):
            token = token.strip().lower()
            m = re.fullmatch(r"(\w+)(?:\(([^)]*)\))?", token)
            if not m:
                raise ConfigError(f"cannot parse augmentation step {token!r}")
            name, args = m.group(1), m.group(2)
            arglist = [a.strip() for a in args.split(",")] if args else []
            try:
                steps.append(_build_step(name, arglist, seed))
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"bad augmentation step {token!r}: {exc}") from exc
        return AugmentationSpec(tuple(steps))


def _build_step(name, args, seed):
    if name == "time":
        if args:
            raise ValueError("time takes no arguments")
        return Time()
    if name == "basepoint":
        if args:
            raise ValueError("basepoint takes no arguments")
        return Basepoint()
    if name == "invisibility":
        if args:
            raise ValueError("invisibility takes no arguments")
        return InvisibilityReset()
    if name == "leadlag":
        lags = tuple(int(a) for a in args) if args else (1,)
        return LeadLag(lags)
    if name == "project":
        if not args:
            raise ValueError("project needs a tuple size")
        include_time = False
        if len(args) == 2 and args[1] == "time":
            include_time = True
        elif len(args) > 1:
            raise ValueError("expected project(k) or project(k,time)")
        return CoordinateProjection(int(args[0]), include_time)
    if name == "affine":
        if len(args) != 2:
            raise ValueError("expected affine(e,p)")
        return AffineProjection(int(args[0]), int(args[1]), seed)
    raise ValueError(f"unknown augmentation {name!r}")


def apply_augmentation(spec: AugmentationSpec, ts: TimeSeries):
    """Fold the spec's steps over ts; always returns a list of series."""
    return spec.apply(ts)
