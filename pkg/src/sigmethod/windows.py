"""Window families mapping one series to a list of subseries.

All window extents are index ranges, reported 0-based half-open; series
values and timestamps are taken verbatim from the input.  A window that
would contain a single observation is padded by repeating that point, which
makes its signature zero instead of undefined.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyWindowError, TooShortError
from .series import TimeSeries


@dataclass(frozen=True)
class Global:
    def ranges(self, n):
        return [(0, n)]

    def text(self):
        return "global"


@dataclass(frozen=True)
class Sliding:
    length: int
    step: int

    def __post_init__(self):
        if self.length < 2 or self.step < 1:
            raise ConfigError(
                f"sliding window needs length >= 2 and step >= 1, "
                f"got ({self.length}, {self.step})"
            )

    def ranges(self, n):
        if self.length > n:
            raise EmptyWindowError(
                f"window length {self.length} exceeds series length {n}"
            )
        return [
            (start, start + self.length)
            for start in range(0, n - self.length + 1, self.step)
        ]

    def text(self):
        return f"sliding({self.length},{self.step})"


@dataclass(frozen=True)
class Expanding:
    initial: int
    step: int

    def __post_init__(self):
        if self.initial < 2 or self.step < 1:
            raise ConfigError(
                f"expanding window needs initial length >= 2 and step >= 1, "
                f"got ({self.initial}, {self.step})"
            )

    def ranges(self, n):
        if self.initial > n:
            raise EmptyWindowError(
                f"initial length {self.initial} exceeds series length {n}"
            )
        return [(0, stop) for stop in range(self.initial, n + 1, self.step)]

    def text(self):
        return f"expanding({self.initial},{self.step})"


@dataclass(frozen=True)
class Dyadic:
    """Hierarchy of q levels; level i splits the series into 2^(i-1) blocks.

    Blocks of one level form a balanced disjoint partition (lengths differ
    by at most one), so concatenating a level reconstructs the series.
    """

    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ConfigError(f"dyadic depth must be >= 1, got {self.depth}")

    def ranges(self, n):
        if 2 ** (self.depth - 1) > n:
            raise EmptyWindowError(
                f"dyadic depth {self.depth} needs at least "
                f"{2 ** (self.depth - 1)} observations, got {n}"
            )
        out = []
        for level in range(1, self.depth + 1):
            blocks = 2 ** (level - 1)
            bounds = [round(j * n / blocks) for j in range(blocks + 1)]
            out.extend(zip(bounds[:-1], bounds[1:]))
        return out

    def text(self):
        return f"dyadic({self.depth})"


@dataclass(frozen=True)
class SlidingCount:
    """Exactly `count` equal sliding windows with length = step = n//count."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError(f"window count must be >= 1, got {self.count}")

    def resolve(self, n):
        size = n // self.count
        if size < 2:
            raise EmptyWindowError(
                f"{self.count} windows over {n} observations would be "
                f"shorter than 2 points"
            )
        return Sliding(size, size)

    def ranges(self, n):
        return self.resolve(n).ranges(n)[: self.count]

    def text(self):
        return f"sliding_count({self.count})"


@dataclass(frozen=True)
class ExpandingCount:
    """Exactly `count` expanding windows growing by n//count each."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError(f"window count must be >= 1, got {self.count}")

    def resolve(self, n):
        size = n // self.count
        if size < 2:
            raise EmptyWindowError(
                f"{self.count} windows over {n} observations would be "
                f"shorter than 2 points"
            )
        return Expanding(size, size)

    def ranges(self, n):
        return self.resolve(n).ranges(n)[: self.count]

    def text(self):
        return f"expanding_count({self.count})"


WindowSpec = (Global, Sliding, Expanding, Dyadic, SlidingCount, ExpandingCount)


def window_count(spec, n: int) -> int:
    """Number of windows the spec yields on a length-n series, no data touched."""
    if n < 2:
        raise TooShortError(f"windowing needs at least 2 points, got {n}")
    return len(spec.ranges(n))


def apply_window(spec, ts: TimeSeries):
    """Materialize the spec's windows as subseries of ts."""
    if ts.length < 2:
        raise TooShortError(f"windowing needs at least 2 points, got {ts.length}")
    out = []
    for start, stop in spec.ranges(ts.length):
        if stop - start >= 2:
            out.append(ts.slice(start, stop))
        else:
            # single-point window: repeat the point so the signature is zero
            t0 = ts.timestamps[start]
            out.append(
                TimeSeries(
                    np.repeat(ts.values[start : start + 1], 2, axis=0),
                    timestamps=np.array([t0, t0 + 1.0]),
                )
            )
    return out


def parse_window(text: str):
    """Parse the config form: global | sliding(4,2) | expanding(4,2) |
    dyadic(3) | sliding_count(5) | expanding_count(5)."""
    token = text.strip().lower()
    m = re.fullmatch(r"(\w+)(?:\(([^)]*)\))?", token)
    if not m:
        raise ConfigError(f"cannot parse window {text!r}")
    name, args = m.group(1), m.group(2)
    arglist = [a.strip() for a in args.split(",")] if args else []
    try:
        if name == "global":
            if arglist:
                raise ValueError("global takes no arguments")
            return Global()
        if name == "sliding":
            if len(arglist) != 2:
                raise ValueError("expected sliding(length,step)")
            return Sliding(int(arglist[0]), int(arglist[1]))
        if name == "expanding":
            if len(arglist) != 2:
                raise ValueError("expected expanding(initial,step)")
            return Expanding(int(arglist[0]), int(arglist[1]))
        if name == "dyadic":
            if len(arglist) != 1:
                raise ValueError("expected dyadic(depth)")
            return Dyadic(int(arglist[0]))
        if name == "sliding_count":
            if len(arglist) != 1:
                raise ValueError("expected sliding_count(count)")
            return SlidingCount(int(arglist[0]))
        if name == "expanding_count":
            if len(arglist) != 1:
                raise ValueError("expected expanding_count(count)")
            return ExpandingCount(int(arglist[0]))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad window {text!r}: {exc}") from exc
    raise ConfigError(f"unknown window {name!r}")
