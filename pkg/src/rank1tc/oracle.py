"""Brute-force verifiers used by the test suite.

Everything here trades speed for independence: GF(2) rank is computed by
enumerating the whole span instead of eliminating, real rank uses exact
fraction-free integer elimination, and joint-solution uniqueness enumerates
candidate solutions directly.  These functions anchor the production
implementations on desk-scale instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complete import SampleSet
from .errors import BadParameter
from .tensor import all_indices, check_index, design_row, sign_to_bit

# Span enumeration over GF(2) is capped at 2^16 elements (rank 16).
MAX_SPAN_BITS = 16


@dataclass(frozen=True)
class BasisMatrix:
    """An anchored row-space basis: one design row plus N blocks of
    first-versus-k difference rows, (d-1)*N + 1 rows in total."""

    width: int
    rows: tuple[tuple[int, ...], ...]
    field: str


def _check_field(field: str) -> str:
    if field not in ("F2", "R"):
        raise ValueError(f"field must be 'F2' or 'R', got {field!r}")
    return field


def all_design_dense(d: int, N: int) -> list[tuple[int, ...]]:
    """All d^N dense design rows, in row-major index order."""
    width = d * N
    rows = []
    for ix in all_indices(d, N):
        row = [0] * width
        for p in design_row(ix, d, N):
            row[p - 1] = 1
        rows.append(tuple(row))
    return rows


def all_design_masks(d: int, N: int) -> list[int]:
    """All d^N design rows as bitmasks, in row-major index order."""
    masks = []
    for ix in all_indices(d, N):
        mask = 0
        for p in design_row(ix, d, N):
            mask |= 1 << (p - 1)
        masks.append(mask)
    return masks


def anchored_basis(d: int, N: int, anchor: Sequence[int], field: str) -> BasisMatrix:
    """Explicit basis of the design matrix's row space, built from one anchor.

    The first row is the anchor's design row; block l then contributes the
    d-1 rows supported on columns of block l that pair coordinate 1 with
    coordinate k (sum over GF(2), difference over R).
    """
    field = _check_field(field)
    anchor = check_index(anchor, d, N)
    width = d * N
    rows = []
    first = [0] * width
    for p in design_row(anchor, d, N):
        first[p - 1] = 1
    rows.append(tuple(first))
    other = 1 if field == "F2" else -1
    for l in range(N):
        for k in range(2, d + 1):
            row = [0] * width
            row[l * d] = 1
            row[l * d + k - 1] = other
            rows.append(tuple(row))
    return BasisMatrix(width=width, rows=tuple(rows), field=field)


def _masks_from_dense(rows: Iterable[Sequence[int]]) -> list[int]:
    masks = []
    for row in rows:
        if any(x not in (0, 1) for x in row):
            raise ValueError("GF(2) rows must have 0/1 entries")
        mask = 0
        for j, x in enumerate(row):
            if x:
                mask |= 1 << j
        masks.append(mask)
    return masks


def _span_rank_f2(masks: Iterable[int]) -> int:
    """Rank by explicit span enumeration, verifying closure as it goes."""
    span = {0}
    rank = 0
    for mask in masks:
        if mask in span:
            continue
        rank += 1
        if rank > MAX_SPAN_BITS:
            raise BadParameter(f"span exceeds 2^{MAX_SPAN_BITS} elements")
        span |= {s ^ mask for s in span}
    assert len(span) == 1 << rank
    return rank


def _bareiss_echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Exact over the rationals: every intermediate entry is a minor of the
    input, and the divisions are exact.  Returns (echelon rows, pivot cols).
    """
    m = [[int(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    rank = 0
    prev = 1
    pivot_cols: list[int] = []
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[col]
        for r in range(rank + 1, len(m)):
            mr = m[r]
            f = mr[col]
            for c in range(col, ncols):
                mr[c] = (p * mr[c] - f * prow[c]) // prev
        prev = p
        pivot_cols.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivot_cols


class ExactRowSpace:
    """Row space of an integer matrix with exact membership tests."""

    def __init__(self, rows: Sequence[Sequence[int]], field: str) -> None:
        self.field = _check_field(field)
        if self.field == "F2":
            # Fully reduced basis: each pivot bit appears in exactly one row.
            self._pivots: dict[int, int] = {}
            for mask in _masks_from_dense(rows):
                v = self._reduce_f2(mask)
                if v == 0:
                    continue
                b = (v & -v).bit_length() - 1
                for bb, row in self._pivots.items():
                    if (row >> b) & 1:
                        self._pivots[bb] = row ^ v
                self._pivots[b] = v
            self.rank = len(self._pivots)
        else:
            self._echelon, self._pivot_cols = _bareiss_echelon(rows)
            self.rank = len(self._echelon)

    def _reduce_f2(self, v: int) -> int:
        for b, row in self._pivots.items():
            if (v >> b) & 1:
                v ^= row
        return v

    def contains(self, row: Sequence[int] | int) -> bool:
        if self.field == "F2":
            mask = row if isinstance(row, int) else _masks_from_dense([row])[0]
            return self._reduce_f2(mask) == 0
        w = [Fraction(int(x)) for x in row]
        for erow, c in zip(self._echelon, self._pivot_cols):
            if w[c]:
                coef = w[c] / erow[c]
                for j in range(c, len(w)):
                    w[j] -= coef * erow[j]
        return not any(w)

    def contains_all(self, rows: Iterable[Sequence[int]]) -> bool:
        return all(self.contains(row) for row in rows)


def bf_rank(rows: Sequence[Sequence[int]], field: str) -> int:
    """Exact rank by brute force.

    Over GF(2) the whole span is enumerated (at most 2^16 elements); over R
    the rank comes from fraction-free integer elimination, so no floating
    point is involved in either field.
    """
    field = _check_field(field)
    if field == "F2":
        return _span_rank_f2(_masks_from_dense(rows))
    return len(_bareiss_echelon(rows)[0])


def bf_rowspace_equal(
    rowsA: Sequence[Sequence[int]], rowsB: Sequence[Sequence[int]], field: str
) -> bool:
    """True iff the two row spaces coincide, by mutual containment."""
    space_a = ExactRowSpace(rowsA, field)
    space_b = ExactRowSpace(rowsB, field)
    return (
        space_a.rank == space_b.rank
        and space_a.contains_all(rowsB)
        and space_b.contains_all(rowsA)
    )


def bf_unique_joint_solution(s: SampleSet) -> bool:
    """True iff the samples pin down the tensor uniquely.

    Enumerates every GF(2) candidate solution of the sampled sign system and
    checks that all of them induce the same sign for all d^N entries; the
    magnitude side is covered by comparing exact real nullities of the
    sampled rows and the complete design matrix.
    """
    width = s.d * s.N
    if width > 20:
        raise BadParameter("d*N too large for kernel enumeration")
    sampled_masks = []
    sampled_bits = []
    sampled_dense = []
    for ix, value in s.unique.items():
        positions = design_row(ix, s.d, s.N)
        mask = 0
        row = [0] * width
        for p in positions:
            mask |= 1 << (p - 1)
            row[p - 1] = 1
        sampled_masks.append(mask)
        sampled_dense.append(row)
        sampled_bits.append(sign_to_bit(1 if value > 0 else -1))

    solutions = [
        y
        for y in range(1 << width)
        if all(
            (y & mask).bit_count() & 1 == bit
            for mask, bit in zip(sampled_masks, sampled_bits)
        )
    ]
    if not solutions:
        return False
    full_masks = all_design_masks(s.d, s.N)
    sign_patterns = {
        tuple((y & mask).bit_count() & 1 for mask in full_masks) for y in solutions
    }
    if len(sign_patterns) != 1:
        return False

    rank_sampled = bf_rank(sampled_dense, "R")
    rank_full = bf_rank(all_design_dense(s.d, s.N), "R")
    return width - rank_sampled == width - rank_full
