"""The time-series value type shared by every stage of the pipeline."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError


class TimeSeries:
    """An n x d array of observed values with strictly increasing timestamps.

    ``values[i]`` is the observation at ``timestamps[i]``.  When no timestamps
    are supplied the series is taken to be regularly sampled at 1..n.  Both
    arrays are stored as read-only float64; instances are immutable and safe
    to share between threads.
    """

    __slots__ = ("values", "timestamps")

    def __init__(self, values, timestamps=None):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise InvalidInputError(
                f"values must be an n x d array with n, d >= 1, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("values contain non-finite entries")
        n = values.shape[0]
        if timestamps is None:
            timestamps = np.arange(1, n + 1, dtype=np.float64)
        else:
            timestamps = np.asarray(timestamps, dtype=np.float64)
            if timestamps.shape != (n,):
                raise InvalidInputError(
                    f"expected {n} timestamps, got shape {timestamps.shape}"
                )
            if not np.all(np.isfinite(timestamps)):
                raise InvalidInputError("timestamps contain non-finite entries")
            if n > 1 and not np.all(np.diff(timestamps) > 0):
                raise InvalidInputError("timestamps must be strictly increasing")
        values = np.ascontiguousarray(values)
        values.setflags(write=False)
        timestamps.setflags(write=False)
        self.values = values
        self.timestamps = timestamps

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.values.shape[0]

    def __repr__(self) -> str:
        return f"TimeSeries(n={self.length}, d={self.dimension})"

    def slice(self, start: int, stop: int) -> "TimeSeries":
        """Contiguous subseries ``values[start:stop]`` keeping original timestamps."""
        return TimeSeries(self.values[start:stop], self.timestamps[start:stop])
