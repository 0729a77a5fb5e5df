"""Arithmetic in the tensor algebra over R^d truncated at a fixed depth.

Elements are stored densely, one flat row-major coefficient block per level:
the word (i_1, ..., i_k) over the alphabet {1..d} sits at flat index
sum((i_m - 1) * d**(k - m)).  With this layout the concatenation of words is
an outer product of blocks, which keeps the inner loops of the signature
kernel cache friendly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotGroupLikeError


class TruncatedTensor:
    """Element of the tensor algebra over R^d truncated at depth N.

    ``levels[k]`` is the flat length-``d**k`` coefficient block of level k,
    for k in 0..N.  Instances are immutable; all operations return new
    tensors.
    """

    __slots__ = ("dimension", "depth", "levels")

    def __init__(self, dimension: int, depth: int, levels):
        if dimension < 1 or depth < 1:
            raise DimensionMismatchError("dimension and depth must be >= 1")
        if len(levels) != depth + 1:
            raise DimensionMismatchError(
                f"expected {depth + 1} levels, got {len(levels)}"
            )
        blocks = []
        for k, block in enumerate(levels):
            block = np.asarray(block, dtype=np.float64).reshape(-1)
            if block.shape[0] != dimension**k:
                raise DimensionMismatchError(
                    f"level {k} must have {dimension**k} coefficients, "
                    f"got {block.shape[0]}"
                )
            block.setflags(write=False)
            blocks.append(block)
        self.dimension = dimension
        self.depth = depth
        self.levels = tuple(blocks)

    def __repr__(self):
        return f"TruncatedTensor(d={self.dimension}, N={self.depth})"

    def scalar(self) -> float:
        return float(self.levels[0][0])

    def flatten(self, include_scalar: bool = False) -> np.ndarray:
        """Concatenate the level blocks into one vector."""
        start = 0 if include_scalar else 1
        return np.concatenate([self.levels[k] for k in range(start, self.depth + 1)])

    def allclose(self, other: "TruncatedTensor", rtol=1e-10, atol=1e-12) -> bool:
        if (self.dimension, self.depth) != (other.dimension, other.depth):
            return False
        return all(
            np.allclose(a, b, rtol=rtol, atol=atol)
            for a, b in zip(self.levels, other.levels)
        )


def _check_compatible(a: TruncatedTensor, b: TruncatedTensor):
    if a.dimension != b.dimension or a.depth != b.depth:
        raise DimensionMismatchError(
            f"operands disagree: (d={a.dimension}, N={a.depth}) vs "
            f"(d={b.dimension}, N={b.depth})"
        )


def identity_tensor(dimension: int, depth: int) -> TruncatedTensor:
    """The unit (1, 0, 0, ...) of the truncated algebra."""
    levels = [np.zeros(dimension**k) for k in range(depth + 1)]
    levels[0][0] = 1.0
    return TruncatedTensor(dimension, depth, levels)


def zero_tensor(dimension: int, depth: int) -> TruncatedTensor:
    levels = [np.zeros(dimension**k) for k in range(depth + 1)]
    return TruncatedTensor(dimension, depth, levels)


def tensor_mul(a: TruncatedTensor, b: TruncatedTensor) -> TruncatedTensor:
    """Truncated tensor product of a and b.

    Level k of the result is sum over p+q=k of level_p(a) (x) level_q(b);
    levels above the common depth are discarded.
    """
    _check_compatible(a, b)
    d, depth = a.dimension, a.depth
    levels = []
    for k in range(depth + 1):
        acc = np.zeros(d**k)
        for p in range(k + 1):
            acc += np.multiply.outer(a.levels[p], b.levels[k - p]).reshape(-1)
        levels.append(acc)
    return TruncatedTensor(d, depth, levels)


def tensor_exp(increment, dimension: int | None = None, depth: int = 1) -> TruncatedTensor:
    """exp of a level-1 increment: sum of increment^(x)k / k! for k in 0..depth.

    This is the signature tensor of a single linear segment with that
    increment, and is group-like by construction.
    """
    increment = np.asarray(increment, dtype=np.float64).reshape(-1)
    d = increment.shape[0]
    if dimension is not None and dimension != d:
        raise DimensionMismatchError(
            f"increment has length {d}, expected {dimension}"
        )
    if depth < 1:
        raise DimensionMismatchError("depth must be >= 1")
    levels = [np.ones(1), increment.copy()]
    for k in range(2, depth + 1):
        levels.append(np.multiply.outer(levels[-1], increment / k).reshape(-1))
    return TruncatedTensor(d, depth, levels)


def tensor_log(t: TruncatedTensor) -> TruncatedTensor:
    """Truncated log of a group-like tensor: sum of (-1)^(m+1) (t-1)^(x)m / m.

    The input must have level-0 coefficient 1; the result has level-0
    coefficient 0 and, for signatures, is a Lie element.
    """
    if abs(t.scalar() - 1.0) > 1e-9:
        raise NotGroupLikeError(
            f"tensor_log requires level-0 coefficient 1, got {t.scalar()}"
        )
    d, depth = t.dimension, t.depth
    x_levels = [np.zeros(1)] + [lvl.copy() for lvl in t.levels[1:]]
    x = TruncatedTensor(d, depth, x_levels)
    acc = [np.zeros(d**k) for k in range(depth + 1)]
    power = x
    for m in range(1, depth + 1):
        coeff = 1.0 / m if m % 2 == 1 else -1.0 / m
        for k in range(depth + 1):
            acc[k] += coeff * power.levels[k]
        if m < depth:
            power = tensor_mul(power, x)
    return TruncatedTensor(d, depth, acc)


# ---------------------------------------------------------------------------
# Lyndon words


def _duval_words(dimension: int, max_length: int):
    # Duval's algorithm; yields every Lyndon word over {0..d-1} of length
    # <= max_length, in lexicographic order.
    word = [-1]
    while word:
        word[-1] += 1
        yield tuple(word)
        m = len(word)
        while len(word) < max_length:
            word.append(word[len(word) - m])
        while word and word[-1] == dimension - 1:
            word.pop()


def word_index(word, dimension: int) -> int:
    """Flat index of a word (1-based letters) inside its level block."""
    idx = 0
    for letter in word:
        idx = idx * dimension + (letter - 1)
    return idx


@dataclass(frozen=True)
class LyndonBasis:
    """Lyndon words over {1..d} of length <= N, sorted by (length, lex).

    ``words`` holds the letter tuples; ``indices[k]`` gives the flat indices
    of the length-k words inside the level-k coefficient block.
    """

    dimension: int
    depth: int
    words: tuple
    indices: tuple  # indices[k] is an int array, k in 0..N (level 0 empty)

    @property
    def size(self) -> int:
        return len(self.words)

    def counts_per_level(self) -> list[int]:
        return [len(self.indices[k]) for k in range(1, self.depth + 1)]


@functools.lru_cache(maxsize=None)
def lyndon_basis(dimension: int, depth: int) -> LyndonBasis:
    """Enumerate the Lyndon words of length <= depth over {1..dimension}."""
    if dimension < 1 or depth < 1:
        raise DimensionMismatchError("dimension and depth must be >= 1")
    by_length = [[] for _ in range(depth + 1)]
    for w in _duval_words(dimension, depth):
        by_length[len(w)].append(tuple(letter + 1 for letter in w))
    words = []
    indices = [np.empty(0, dtype=np.intp)]
    for k in range(1, depth + 1):
        level_words = by_length[k]  # Duval emits in lex order already
        words.extend(level_words)
        idx = np.array([word_index(w, dimension) for w in level_words], dtype=np.intp)
        idx.setflags(write=False)
        indices.append(idx)
    return LyndonBasis(dimension, depth, tuple(words), tuple(indices))


def project_to_lyndon(lie: TruncatedTensor, basis: LyndonBasis) -> np.ndarray:
    """Read the coefficients of a Lie element at the Lyndon-word indices.

    The change of basis from these coordinates to a Lie-bracket basis is
    unitriangular, so this is an invertible reparametrization of the
    logsignature with the same dimension.
    """
    if (lie.dimension, lie.depth) != (basis.dimension, basis.depth):
        raise DimensionMismatchError(
            f"tensor (d={lie.dimension}, N={lie.depth}) does not match basis "
            f"(d={basis.dimension}, N={basis.depth})"
        )
    if abs(lie.scalar()) > 1e-9:
        raise NotGroupLikeError(
            f"expected a Lie element with level-0 coefficient 0, got {lie.scalar()}"
        )
    parts = [lie.levels[k][basis.indices[k]] for k in range(1, basis.depth + 1)]
    return np.concatenate(parts) if parts else np.empty(0)


def witt_number(dimension: int, length: int) -> int:
    """Number of Lyndon words of the given length: (1/k) sum mu(m) d^(k/m)."""
    from sympy import divisors, mobius  # deferred: sympy import is slow

    total = sum(int(mobius(m)) * dimension ** (length // m) for m in divisors(length))
    return total // length


def logsignature_width(dimension: int, depth: int) -> int:
    """Total number of Lyndon words of length 1..depth."""
    return sum(witt_number(dimension, k) for k in range(1, depth + 1))


def signature_width(dimension: int, depth: int) -> int:
    """Number of signature coefficients at levels 1..depth: sum of d^k."""
    return sum(dimension**k for k in range(1, depth + 1))
