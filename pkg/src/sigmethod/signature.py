"""Signature and logsignature of a piecewise-linear path.

The signature is evaluated by folding one-segment exponentials with the
truncated tensor product, left to right: one running tensor, O(n d^N) time,
O(d^N) memory.  A slow quadrature oracle evaluates the defining iterated
integrals directly and is used to validate the fast kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import TooShortError
from .series import TimeSeries
from .tensor import (
    TruncatedTensor,
    lyndon_basis,
    project_to_lyndon,
    signature_width,
    tensor_log,
)

# Segments are processed in chunks so the per-segment power tensors can be
# batch-computed; bounds memory at chunk_size * d^N floats.
_CHUNK = 512


@dataclass(frozen=True)
class SignatureFeatures:
    """Flat signature vector, levels 1..N concatenated (no level-0 scalar)."""

    dimension: int
    depth: int
    values: np.ndarray

    def __post_init__(self):
        expected = signature_width(self.dimension, self.depth)
        if self.values.shape != (expected,):
            raise ValueError(
                f"signature of d={self.dimension}, N={self.depth} must have "
                f"{expected} entries, got {self.values.shape}"
            )

    def names(self) -> list[str]:
        return feature_names(self.dimension, self.depth, "signature")

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


@dataclass(frozen=True)
class LogSignatureFeatures:
    """Lyndon-word coordinates of the logsignature, by (length, lex) order."""

    dimension: int
    depth: int
    values: np.ndarray

    def __post_init__(self):
        expected = lyndon_basis(self.dimension, self.depth).size
        if self.values.shape != (expected,):
            raise ValueError(
                f"logsignature of d={self.dimension}, N={self.depth} must have "
                f"{expected} entries, got {self.values.shape}"
            )

    def names(self) -> list[str]:
        return feature_names(self.dimension, self.depth, "logsignature")

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def _as_values(ts) -> np.ndarray:
    if isinstance(ts, TimeSeries):
        return ts.values
    return TimeSeries(ts).values


def signature_tensor(ts, depth: int) -> TruncatedTensor:
    """Group-like signature tensor of the piecewise-linear path through ts.

    Timestamps are ignored: the signature depends on the traversal order
    only, not on the parametrization.
    """
    values = _as_values(ts)
    n, d = values.shape
    if n < 2:
        raise TooShortError(f"signature needs at least 2 points, got {n}")
    if depth < 1:
        raise ValueError("depth must be >= 1")

    increments = np.diff(values, axis=0)
    sizes = [d**k for k in range(depth + 1)]
    levels = [np.ones(1)] + [np.zeros(sizes[k]) for k in range(1, depth + 1)]
    buf = np.empty(sizes[depth])

    for start in range(0, n - 1, _CHUNK):
        chunk = increments[start : start + _CHUNK]
        m = chunk.shape[0]
        # powers[q][j] = (increment_j)^(x)q / q!, flattened
        powers = [None, chunk]
        for q in range(2, depth + 1):
            prev = powers[q - 1].reshape(m, sizes[q - 1], 1)
            powers.append((prev * (chunk[:, None, :] / q)).reshape(m, sizes[q]))
        for j in range(m):
            # top-down so each update reads pre-segment lower levels
            for k in range(depth, 0, -1):
                acc = levels[k]
                for q in range(1, k):
                    view = buf[: sizes[k]].reshape(sizes[k - q], sizes[q])
                    np.multiply.outer(levels[k - q], powers[q][j], out=view)
                    acc += buf[: sizes[k]]
                acc += powers[k][j]  # q = k term: level-0 scalar is 1
    return TruncatedTensor(d, depth, levels)


def signature(ts, depth: int) -> SignatureFeatures:
    """Depth-N signature features: levels 1..N of the signature tensor."""
    t = signature_tensor(ts, depth)
    return SignatureFeatures(t.dimension, depth, t.flatten(include_scalar=False))


def logsignature(ts, depth: int) -> LogSignatureFeatures:
    """Logsignature features in Lyndon-word coordinates."""
    t = signature_tensor(ts, depth)
    basis = lyndon_basis(t.dimension, depth)
    return LogSignatureFeatures(t.dimension, depth, project_to_lyndon(tensor_log(t), basis))


def signature_oracle(ts, depth: int, subdivisions: int = 2000) -> SignatureFeatures:
    """Signature by direct quadrature of the defining iterated integrals.

    Each segment is subdivided and every S_(w,i)(t) = integral of S_w dX^i
    is accumulated with the composite trapezoid rule.  Deliberately
    independent of the Chen-fold kernel; converges as subdivisions grows.
    """
    values = _as_values(ts)
    n, d = values.shape
    if n < 2:
        raise TooShortError(f"signature needs at least 2 points, got {n}")
    if subdivisions < 1:
        raise ValueError("subdivisions must be >= 1")

    fracs = np.arange(subdivisions) / subdivisions
    segs = values[:-1, None, :] + fracs[None, :, None] * np.diff(values, axis=0)[:, None, :]
    fine = np.concatenate([segs.reshape(-1, d), values[-1:, :]], axis=0)
    dX = np.diff(fine, axis=0)
    m = dX.shape[0]

    prev = {(): np.ones(m + 1)}
    blocks = []
    for k in range(1, depth + 1):
        cur = {}
        for word in itertools.product(range(1, d + 1), repeat=k):
            parent = prev[word[:-1]]
            integrand = 0.5 * (parent[:-1] + parent[1:]) * dX[:, word[-1] - 1]
            acc = np.empty(m + 1)
            acc[0] = 0.0
            np.cumsum(integrand, out=acc[1:])
            cur[word] = acc
        blocks.append(np.array([cur[w][-1] for w in cur]))
        prev = cur
    return SignatureFeatures(d, depth, np.concatenate(blocks))


def feature_names(dimension: int, depth: int, transform: str) -> list[str]:
    """Stable per-coordinate names aligned with the flat vector order."""
    if transform == "signature":
        names = []
        for k in range(1, depth + 1):
            for word in itertools.product(range(1, dimension + 1), repeat=k):
                names.append("sig(" + ",".join(map(str, word)) + ")")
        return names
    if transform == "logsignature":
        basis = lyndon_basis(dimension, depth)
        return ["logsig[" + ",".join(map(str, w)) + "]" for w in basis.words]
    raise ValueError(f"unknown transform {transform!r}")
