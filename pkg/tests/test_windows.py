import numpy as np
import pytest
from numpy.testing import assert_allclose

from sigmethod.errors import ConfigError, EmptyWindowError, TooShortError
from sigmethod.series import TimeSeries
from sigmethod.signature import signature
from sigmethod.windows import (
    Dyadic,
    Expanding,
    ExpandingCount,
    Global,
    Sliding,
    SlidingCount,
    apply_window,
    parse_window,
    window_count,
)

ALL_SPECS = [
    Global(),
    Sliding(4, 2),
    Sliding(2, 1),
    Sliding(6, 6),
    Expanding(4, 2),
    Expanding(2, 3),
    Dyadic(1),
    Dyadic(2),
    Dyadic(3),
    SlidingCount(3),
    ExpandingCount(3),
]


def test_global_returns_input():
    ts = TimeSeries(np.arange(10.0).reshape(5, 2))
    out = apply_window(Global(), ts)
    assert len(out) == 1
    assert np.array_equal(out[0].values, ts.values)


def test_sliding_start_pattern():
    ts = TimeSeries(np.arange(10.0).reshape(10, 1))
    out = apply_window(Sliding(4, 2), ts)
    starts = [w.values[0, 0] for w in out]
    stops = [w.values[-1, 0] for w in out]
    assert starts == [0, 2, 4, 6]
    assert stops == [3, 5, 7, 9]


def test_sliding_drops_trailing_remainder():
    assert window_count(Sliding(4, 3), 9) == 2  # 1:4, 4:7; 7:10 would overflow


def test_expanding_end_pattern():
    ts = TimeSeries(np.arange(10.0).reshape(10, 1))
    out = apply_window(Expanding(4, 2), ts)
    assert [w.length for w in out] == [4, 6, 8, 10]
    assert all(w.values[0, 0] == 0 for w in out)


def test_dyadic_block_lengths_power_of_two():
    ts = TimeSeries(np.arange(8.0).reshape(8, 1))
    out = apply_window(Dyadic(3), ts)
    assert [w.length for w in out] == [8, 4, 4, 2, 2, 2, 2]


def test_dyadic_partition_balanced_and_covering():
    for n in [5, 6, 7, 9, 10, 13, 33]:
        for q in [1, 2, 3]:
            if 2 ** (q - 1) > n:
                continue
            ranges = Dyadic(q).ranges(n)
            pos = 0
            for level in range(1, q + 1):
                blocks = 2 ** (level - 1)
                level_ranges = ranges[pos : pos + blocks]
                pos += blocks
                # disjoint, covering, order-preserving
                assert level_ranges[0][0] == 0
                assert level_ranges[-1][1] == n
                for (a0, a1), (b0, b1) in zip(level_ranges, level_ranges[1:]):
                    assert a1 == b0
                lengths = [b - a for a, b in level_ranges]
                assert max(lengths) - min(lengths) <= 1


def test_dyadic_last_level_concatenation_reconstructs():
    rng = np.random.default_rng(0)
    vals = rng.standard_normal((13, 2))
    ts = TimeSeries(vals)
    out = apply_window(Dyadic(3), ts)
    level3 = out[3:]
    recon = np.concatenate([w.values for w in level3])
    assert np.array_equal(recon, vals)


def test_window_counts():
    assert window_count(Dyadic(4), 16) == 15
    assert window_count(Global(), 5) == 1
    assert window_count(Expanding(4, 2), 10) == 4


def test_count_matches_apply_exhaustively():
    for n in range(2, 65):
        ts = TimeSeries(np.arange(float(n)).reshape(n, 1))
        for spec in ALL_SPECS:
            try:
                expected = window_count(spec, n)
            except EmptyWindowError:
                with pytest.raises(EmptyWindowError):
                    apply_window(spec, ts)
                continue
            assert len(apply_window(spec, ts)) == expected, (spec, n)


def test_windows_preserve_timestamps():
    t = np.array([0.0, 0.3, 1.0, 1.5, 4.0, 4.5, 5.0, 9.0])
    ts = TimeSeries(np.arange(8.0).reshape(8, 1), timestamps=t)
    for spec in [Sliding(3, 2), Expanding(3, 2), Dyadic(2)]:
        for w, (a, b) in zip(apply_window(spec, ts), spec.ranges(8)):
            assert np.array_equal(w.timestamps, t[a:b])
            assert np.array_equal(w.values[:, 0], np.arange(8.0)[a:b])


def test_single_point_window_padded_to_zero_signature():
    ts = TimeSeries(np.arange(5.0).reshape(5, 1))
    out = apply_window(Dyadic(3), ts)
    assert all(w.length >= 2 for w in out)
    padded = out[3]  # level-3 first block covers one observation for n=5
    assert padded.length == 2
    assert padded.values[0, 0] == padded.values[1, 0]
    assert_allclose(signature(padded, 2).values, [0.0, 0.0], rtol=0, atol=0)


def test_count_based_windows():
    assert SlidingCount(3).ranges(10) == [(0, 3), (3, 6), (6, 9)]
    assert ExpandingCount(5).ranges(12) == [(0, 2), (0, 4), (0, 6), (0, 8), (0, 10)]
    assert window_count(SlidingCount(5), 40) == 5
    assert window_count(ExpandingCount(20), 100) == 20
    with pytest.raises(EmptyWindowError):
        window_count(SlidingCount(5), 9)


def test_errors():
    ts = TimeSeries(np.zeros((3, 1)))
    with pytest.raises(EmptyWindowError):
        apply_window(Sliding(4, 1), ts)
    with pytest.raises(EmptyWindowError):
        apply_window(Expanding(5, 1), ts)
    with pytest.raises(EmptyWindowError):
        apply_window(Dyadic(3), ts)
    with pytest.raises(TooShortError):
        apply_window(Global(), TimeSeries(np.zeros((1, 1))))
    with pytest.raises(ConfigError):
        Sliding(1, 1)
    with pytest.raises(ConfigError):
        Expanding(2, 0)
    with pytest.raises(ConfigError):
        Dyadic(0)


def test_parse_round_trip_and_errors():
    texts = [
        "global",
        "sliding(4,2)",
        "expanding(4,2)",
        "dyadic(3)",
        "sliding_count(5)",
        "expanding_count(5)",
    ]
    for text in texts:
        assert parse_window(text).text() == text
    for bad in ["pineapple", "sliding(4)", "dyadic()", "dyadic(x)", "global(1)"]:
        with pytest.raises(ConfigError):
            parse_window(bad)
