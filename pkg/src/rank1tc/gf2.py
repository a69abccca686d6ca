"""Bit-packed linear algebra over GF(2).

Rows are Python ints used as bitsets: bit j (LSB first) holds column j+1, so
a row operation is a single machine-word-parallel XOR.  Provides rank, an
any-solution Gauss-Jordan solver, and span membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import Inconsistent


@dataclass(frozen=True)
class BitMatrix:
    """A list of equal-width GF(2) rows; may be wide, tall, or empty."""

    width: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError("width must be nonnegative")
        for row in self.rows:
            if row < 0 or row >> self.width:
                raise ValueError(f"row {row:#x} does not fit in width {self.width}")


@dataclass(frozen=True)
class BitSystem:
    """An augmented system over GF(2): one rhs bit per matrix row."""

    matrix: BitMatrix
    rhs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rhs) != len(self.matrix.rows):
            raise ValueError("rhs length must equal the row count")
        if any(b not in (0, 1) for b in self.rhs):
            raise ValueError("rhs entries must be bits")


def mask_from_positions(positions: Iterable[int]) -> int:
    """Pack 1-based set positions into a row bitmask."""
    mask = 0
    for p in positions:
        mask |= 1 << (int(p) - 1)  # int() guards against fixed-width integers
    return mask


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


class SpanTracker:
    """Incrementally maintained reduced basis of a GF(2) row span.

    Each added row is reduced against the current basis; rows that grow the
    span become new pivots and are cross-eliminated so every pivot bit appears
    in exactly one basis row.
    """

    __slots__ = ("width", "_pivots")

    def __init__(self, width: int, rows: Iterable[int] = ()) -> None:
        self.width = width
        self._pivots: dict[int, int] = {}
        for row in rows:
            self.add(row)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int) -> int:
        """Residual of v after elimination against the basis."""
        for b, row in self._pivots.items():
            if (v >> b) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def add(self, v: int) -> bool:
        """Add a row; returns True iff it enlarged the span."""
        v = self.reduce(v)
        if v == 0:
            return False
        b = _lowest_bit(v)
        for bb, row in self._pivots.items():
            if (row >> b) & 1:
                self._pivots[bb] = row ^ v
        self._pivots[b] = v
        return True

    def basis(self) -> list[int]:
        """Reduced basis rows, ordered by pivot column."""
        return [row for _, row in sorted(self._pivots.items())]


def gf2_rank(m: BitMatrix) -> int:
    """Dimension of the GF(2) row span; 0 for an empty matrix."""
    tracker = SpanTracker(m.width, m.rows)
    return tracker.rank


def gf2_in_span(m: BitMatrix, v: int) -> bool:
    """True iff v lies in the GF(2) row span of m."""
    if v < 0 or v >> m.width:
        raise ValueError(f"vector {v:#x} does not fit in width {m.width}")
    return SpanTracker(m.width, m.rows).contains(v)


def gf2_solve(sys: BitSystem) -> int:
    """Any solution of the system, as a bitmask over the columns.

    Pivots are chosen in the leftmost unresolved column; free variables are
    set to 0, which makes the result deterministic.  Raises Inconsistent when
    no solution exists.
    """
    width = sys.matrix.width
    aug = 1 << width
    pivots: dict[int, int] = {}
    for row, bit in zip(sys.matrix.rows, sys.rhs):
        v = row | (aug if bit else 0)
        for b, r in pivots.items():
            if (v >> b) & 1:
                v ^= r
        if v == 0:
            continue
        if v == aug:
            raise Inconsistent("no GF(2) solution exists")
        b = _lowest_bit(v)
        for bb, r in pivots.items():
            if (r >> b) & 1:
                pivots[bb] = r ^ v
        pivots[b] = v
    y = 0
    for b, r in pivots.items():
        if r & aug:
            y |= 1 << b
    return y
