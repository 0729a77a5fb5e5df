import numpy as np
import pytest
from numpy.testing import assert_allclose

from sigmethod.errors import DimensionMismatchError, NotGroupLikeError
from sigmethod.tensor import (
    LyndonBasis,
    identity_tensor,
    logsignature_width,
    lyndon_basis,
    project_to_lyndon,
    signature_width,
    tensor_exp,
    tensor_log,
    tensor_mul,
    witt_number,
    word_index,
    zero_tensor,
)

TIGHT = dict(rtol=1e-10, atol=1e-12)


def random_tensor(rng, d, depth, scalar=None):
    levels = [rng.standard_normal(d**k) for k in range(depth + 1)]
    if scalar is not None:
        levels[0][0] = scalar
    from sigmethod.tensor import TruncatedTensor

    return TruncatedTensor(d, depth, levels)


def test_exp_scalar_path():
    t = tensor_exp([2.0], depth=3)
    assert_allclose(t.levels[0], [1.0], **TIGHT)
    assert_allclose(t.levels[1], [2.0], **TIGHT)
    assert_allclose(t.levels[2], [2.0], **TIGHT)
    assert_allclose(t.levels[3], [4.0 / 3.0], **TIGHT)


def test_exp_level2_is_half_outer_square():
    t = tensor_exp([1.0, 2.0], depth=2)
    assert_allclose(t.levels[2], [0.5, 1.0, 1.0, 2.0], **TIGHT)


def test_mul_of_collinear_exps_adds_increments():
    ab = tensor_mul(tensor_exp([1.0], depth=2), tensor_exp([2.0], depth=2))
    assert_allclose(ab.levels[0], [1.0], **TIGHT)
    assert_allclose(ab.levels[1], [3.0], **TIGHT)
    assert_allclose(ab.levels[2], [4.5], **TIGHT)


def test_mul_associative_and_unit():
    rng = np.random.default_rng(7)
    for d, depth in [(1, 4), (2, 3), (3, 3), (4, 2)]:
        a = random_tensor(rng, d, depth)
        b = random_tensor(rng, d, depth)
        c = random_tensor(rng, d, depth)
        left = tensor_mul(tensor_mul(a, b), c)
        right = tensor_mul(a, tensor_mul(b, c))
        assert left.allclose(right, **TIGHT)
        e = identity_tensor(d, depth)
        assert tensor_mul(e, a).allclose(a, **TIGHT)
        assert tensor_mul(a, e).allclose(a, **TIGHT)


def test_mul_not_commutative():
    a = tensor_exp([1.0, 0.0], depth=2)
    b = tensor_exp([0.0, 1.0], depth=2)
    assert not tensor_mul(a, b).allclose(tensor_mul(b, a))


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        tensor_mul(tensor_exp([1.0], depth=2), tensor_exp([1.0, 0.0], depth=2))
    with pytest.raises(DimensionMismatchError):
        tensor_mul(tensor_exp([1.0], depth=2), tensor_exp([1.0], depth=3))


def test_log_of_corner_path():
    s = tensor_mul(tensor_exp([1.0, 0.0], depth=2), tensor_exp([0.0, 1.0], depth=2))
    assert_allclose(s.flatten(), [1.0, 1.0, 0.5, 1.0, 0.0, 0.5], **TIGHT)
    lg = tensor_log(s)
    assert_allclose(lg.levels[0], [0.0], **TIGHT)
    assert_allclose(lg.levels[1], [1.0, 1.0], **TIGHT)
    # level 2 of the log is the antisymmetric area block
    assert_allclose(lg.levels[2], [0.0, 0.5, -0.5, 0.0], **TIGHT)


def series_exp(lie):
    """exp of a zero-scalar tensor via the truncated power series."""
    import math

    from sigmethod.tensor import TruncatedTensor

    acc = identity_tensor(lie.dimension, lie.depth)
    term = identity_tensor(lie.dimension, lie.depth)
    for m in range(1, lie.depth + 1):
        term = tensor_mul(term, lie)
        acc = TruncatedTensor(
            lie.dimension,
            lie.depth,
            [
                acc.levels[k] + term.levels[k] / math.factorial(m)
                for k in range(lie.depth + 1)
            ],
        )
    return acc


def test_log_exp_round_trip():
    rng = np.random.default_rng(11)
    for d, depth in [(1, 5), (2, 4), (3, 3)]:
        inc = rng.standard_normal(d)
        t = tensor_exp(inc, depth=depth)
        lg = tensor_log(t)
        # log of a one-segment signature has the increment at level 1
        assert_allclose(lg.levels[1], inc, **TIGHT)
        assert series_exp(lg).allclose(t, **TIGHT)


def test_log_of_product_round_trip():
    rng = np.random.default_rng(13)
    for d, depth in [(2, 4), (3, 3)]:
        t = identity_tensor(d, depth)
        for _ in range(4):
            t = tensor_mul(t, tensor_exp(rng.standard_normal(d), depth=depth))
        assert series_exp(tensor_log(t)).allclose(t, **TIGHT)


def test_log_rejects_non_unit_scalar():
    t = zero_tensor(2, 2)
    with pytest.raises(NotGroupLikeError):
        tensor_log(t)


def test_word_index_layout():
    # (i1, ..., ik) -> sum (i_m - 1) d^(k - m), row major
    assert word_index((1,), 2) == 0
    assert word_index((2,), 2) == 1
    assert word_index((1, 2), 2) == 1
    assert word_index((2, 1), 2) == 2
    assert word_index((1, 1, 2), 2) == 1
    assert word_index((3, 2), 3) == 7


def test_lyndon_words_small_alphabet():
    basis = lyndon_basis(2, 3)
    assert basis.words == ((1,), (2,), (1, 2), (1, 1, 2), (1, 2, 2))
    assert basis.counts_per_level() == [2, 1, 2]
    assert basis.size == 5


def brute_force_lyndon_count(d, k):
    # a word is Lyndon iff it is strictly smaller than all proper rotations
    count = 0
    for code in range(d**k):
        word = []
        c = code
        for _ in range(k):
            word.append(c % d)
            c //= d
        word.reverse()
        if all(word < word[r:] + word[:r] for r in range(1, k)):
            count += 1
    return count


def test_witt_numbers_match_brute_force():
    for d in range(1, 5):
        for k in range(1, 6):
            assert witt_number(d, k) == brute_force_lyndon_count(d, k)


def test_basis_sizes_match_witt():
    for d in range(1, 5):
        basis = lyndon_basis(d, 4)
        for k in range(1, 5):
            assert len(basis.indices[k]) == witt_number(d, k)
    assert logsignature_width(2, 3) == 5
    assert signature_width(2, 3) == 14


def test_lyndon_sorted_by_length_then_lex():
    basis = lyndon_basis(3, 4)
    key = [(len(w), w) for w in basis.words]
    assert key == sorted(key)


def test_project_to_lyndon_corner_path():
    s = tensor_mul(tensor_exp([1.0, 0.0], depth=2), tensor_exp([0.0, 1.0], depth=2))
    coords = project_to_lyndon(tensor_log(s), lyndon_basis(2, 2))
    assert_allclose(coords, [1.0, 1.0, 0.5], **TIGHT)


def test_project_rejects_mismatched_basis():
    s = tensor_log(tensor_exp([1.0, 0.0], depth=2))
    with pytest.raises(DimensionMismatchError):
        project_to_lyndon(s, lyndon_basis(3, 2))


def test_project_rejects_group_like_input():
    s = tensor_exp([1.0, 0.0], depth=2)
    with pytest.raises(NotGroupLikeError):
        project_to_lyndon(s, lyndon_basis(2, 2))


def test_levels_are_read_only():
    t = tensor_exp([1.0, 2.0], depth=2)
    with pytest.raises(ValueError):
        t.levels[1][0] = 5.0
