"""Rescaling of paths before, or feature blocks after, the transform.

The depth-k signature term of a path scaled by alpha grows like
alpha^k / k!, so either scaling the path by (N!)^(1/N) beforehand or the
level-k feature block by k! afterwards brings the deepest block to O(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionMismatchError
from .series import TimeSeries
from .signature import LogSignatureFeatures, SignatureFeatures
from .tensor import lyndon_basis, signature_width

MODES = ("none", "pre", "post")


@dataclass(frozen=True)
class RescaleSpec:
    mode: str = "none"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"rescale mode must be one of {MODES}, got {self.mode!r}")


def pre_factor(depth: int) -> float:
    """alpha = (N!)^(1/N); the level-k signature block then scales by alpha^k."""
    return math.factorial(depth) ** (1.0 / depth)


def rescale_pre(ts: TimeSeries, depth: int) -> TimeSeries:
    """Multiply values (not timestamps) by (N!)^(1/N)."""
    if depth < 1:
        raise ConfigError(f"depth must be >= 1, got {depth}")
    return TimeSeries(ts.values * pre_factor(depth), timestamps=ts.timestamps)


def _post_factors(dimension: int, depth: int, transform: str) -> np.ndarray:
    if transform == "signature":
        lengths = [dimension**k for k in range(1, depth + 1)]
    elif transform == "logsignature":
        lengths = lyndon_basis(dimension, depth).counts_per_level()
    else:
        raise ConfigError(f"unknown transform {transform!r}")
    return np.repeat(
        [float(math.factorial(k)) for k in range(1, depth + 1)], lengths
    )


def _scaled(features, dimension, depth, transform, invert):
    if isinstance(features, SignatureFeatures):
        out = _scaled(features.values, features.dimension, features.depth,
                      "signature", invert)
        return SignatureFeatures(features.dimension, features.depth, out)
    if isinstance(features, LogSignatureFeatures):
        out = _scaled(features.values, features.dimension, features.depth,
                      "logsignature", invert)
        return LogSignatureFeatures(features.dimension, features.depth, out)
    if dimension is None or depth is None:
        raise ConfigError(
            "dimension and depth are required when rescaling a plain array"
        )
    values = np.asarray(features, dtype=np.float64)
    factors = _post_factors(dimension, depth, transform)
    if values.shape[-1] != factors.shape[0]:
        raise DimensionMismatchError(
            f"expected {factors.shape[0]} features for d={dimension}, N={depth}, "
            f"{transform}; got {values.shape[-1]}"
        )
    return values / factors if invert else values * factors


def rescale_post(features, dimension=None, depth=None, transform="signature"):
    """Multiply the level-k feature block (word length k for logsignatures)
    by k!.  Accepts a flat vector or a feature container, returns the same
    kind; dimension and depth are read off containers."""
    return _scaled(features, dimension, depth, transform, invert=False)


def unscale_post(features, dimension=None, depth=None, transform="signature"):
    """Inverse of rescale_post (the map is an invertible diagonal scaling)."""
    return _scaled(features, dimension, depth, transform, invert=True)
