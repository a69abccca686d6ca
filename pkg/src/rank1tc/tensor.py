"""Nonzero rank-1 tensors and their linear-system encoding.

A tensor here is stored as its N factor vectors, each of length d with all
coordinates nonzero; the entry at 1-based index (i_1, ..., i_N) is the product
of the picked coordinates.  Every entry splits into a sign bit plus a
log-magnitude, and every index maps to a sparse 0/1 design row with exactly
one set position per length-d block.  Those two facts turn completion into a
pair of linear systems, one over GF(2) and one over the reals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import IndexOutOfRange, ZeroCoordinate, ZeroValue

# 1-based coordinates, one per mode.
Index = tuple[int, ...]


@dataclass(frozen=True)
class FactorList:
    """Factor vectors of a rank-1 tensor with all coordinates nonzero."""

    d: int
    N: int
    factors: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class ObservedEntry:
    """One sampled (index, value) pair; a zero value is a hard input error."""

    index: Index
    value: float

    def __post_init__(self) -> None:
        if self.value == 0:
            raise ZeroValue(f"observed value at {self.index} is zero")


def make_tensor(factors: Sequence[Sequence[float]]) -> FactorList:
    """Build a FactorList from N equally long vectors.

    Raises ZeroCoordinate if any coordinate is exactly zero; the tensor class
    requires every entry to be nonzero.
    """
    if len(factors) == 0:
        raise ValueError("need at least one factor vector")
    arrays = []
    for vec in factors:
        arr = np.array(vec, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("each factor must be a nonempty vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("factor coordinates must be finite")
        if np.any(arr == 0):
            raise ZeroCoordinate("factor coordinates must be nonzero")
        arr.flags.writeable = False
        arrays.append(arr)
    d = arrays[0].size
    if any(a.size != d for a in arrays):
        raise ValueError("all factor vectors must have the same length")
    return FactorList(d=d, N=len(arrays), factors=tuple(arrays))


def check_index(ix: Sequence[int], d: int, N: int) -> Index:
    """Validate a 1-based index against (d, N) and return it as a tuple."""
    if len(ix) != N:
        raise IndexOutOfRange(f"index {tuple(ix)} has length {len(ix)}, expected {N}")
    out = tuple(int(i) for i in ix)
    if any(i < 1 or i > d for i in out):
        raise IndexOutOfRange(f"index {out} has a coordinate outside [1, {d}]")
    return out


def entry(t: FactorList, ix: Sequence[int]) -> float:
    """Evaluate one entry: the product of the picked factor coordinates."""
    ix = check_index(ix, t.d, t.N)
    value = 1.0
    for vec, i in zip(t.factors, ix):
        value *= float(vec[i - 1])
    return value


def dense_tensor(t: FactorList, max_entries: int = 10**7) -> np.ndarray:
    """Materialize all d^N entries as an ndarray of shape (d,) * N."""
    if t.d**t.N > max_entries:
        raise ValueError(f"d^N = {t.d**t.N} exceeds the dense limit {max_entries}")
    out = t.factors[0]
    for vec in t.factors[1:]:
        out = np.multiply.outer(out, vec)
    return out.reshape((t.d,) * t.N)


def all_indices(d: int, N: int) -> Iterator[Index]:
    """All indices of [d]^N in row-major order (the fixed enumeration order)."""
    return itertools.product(range(1, d + 1), repeat=N)


def index_to_ordinal(ix: Sequence[int], d: int, N: int) -> int:
    """Map an index to its 1-based row-major ordinal in [1, d^N]."""
    ix = check_index(ix, d, N)
    k = 0
    for i in ix:
        k = k * d + (i - 1)
    return k + 1


def ordinal_to_index(k: int, d: int, N: int) -> Index:
    """Invert index_to_ordinal."""
    if k < 1 or k > d**N:
        raise IndexOutOfRange(f"ordinal {k} outside [1, {d**N}]")
    rem = k - 1
    coords = []
    for _ in range(N):
        coords.append(rem % d + 1)
        rem //= d
    return tuple(reversed(coords))


def sign_to_bit(s: float) -> int:
    """Map a sign to a bit: +1 -> 0, -1 -> 1."""
    if s == 1:
        return 0
    if s == -1:
        return 1
    raise ValueError(f"expected a sign in {{+1, -1}}, got {s}")


def bit_to_sign(b: int) -> int:
    """Map a bit back to a sign: 0 -> +1, 1 -> -1."""
    if b == 0:
        return 1
    if b == 1:
        return -1
    raise ValueError(f"expected a bit in {{0, 1}}, got {b}")


def decompose_value(v: float) -> tuple[int, float]:
    """Split a nonzero value into (sign bit, natural log of magnitude)."""
    if v == 0:
        raise ZeroValue("cannot decompose a zero value")
    return (0 if v > 0 else 1), math.log(abs(v))


def design_row(ix: Sequence[int], d: int, N: int) -> tuple[int, ...]:
    """Set positions of the sparse design row for an index.

    Position (l-1)*d + i_l is set for each mode l, so the dense row is the
    concatenation of N length-d indicator vectors.  Positions are 1-based.
    """
    ix = check_index(ix, d, N)
    return tuple(l * d + i for l, i in enumerate(ix))
