"""Whitespace-separated file formats.

Factor file: a header line ``d N`` followed by N lines of d decimal reals.
Observed-entries / completed-entries file: one line per entry,
``i_1 ... i_N value`` with 1-based indices.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, TextIO

from .tensor import FactorList, Index, ObservedEntry, make_tensor


def format_value(v: float) -> str:
    """Shortest exact decimal form, with a bare integer when possible."""
    text = repr(float(v))
    return text[:-2] if text.endswith(".0") else text


def read_factor_file(path: str) -> FactorList:
    with open(path, encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty factor file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: header must be 'd N'")
    d, N = int(header[0]), int(header[1])
    if d < 1 or N < 1:
        raise ValueError(f"{path}: d and N must be positive")
    if len(lines) != N + 1:
        raise ValueError(f"{path}: expected {N} factor lines, found {len(lines) - 1}")
    factors = []
    for line in lines[1:]:
        vec = [float(x) for x in line.split()]
        if len(vec) != d:
            raise ValueError(f"{path}: factor line has {len(vec)} values, expected {d}")
        if not all(math.isfinite(x) for x in vec):
            raise ValueError(f"{path}: factor values must be finite")
        factors.append(vec)
    return make_tensor(factors)


def write_factor_file(path: str, t: FactorList) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{t.d} {t.N}\n")
        for vec in t.factors:
            handle.write(" ".join(format_value(x) for x in vec) + "\n")


def read_observed_file(path: str, N: int) -> list[ObservedEntry]:
    """Parse observation lines; index range checks happen at SampleSet build."""
    entries = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != N + 1:
                raise ValueError(
                    f"{path}:{lineno}: expected {N} indices and a value"
                )
            ix = tuple(int(x) for x in parts[:N])
            value = float(parts[N])
            if not math.isfinite(value):
                raise ValueError(f"{path}:{lineno}: value must be finite")
            entries.append(ObservedEntry(ix, value))
    return entries


def read_index_file(path: str, N: int) -> list[Index]:
    indices = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != N:
                raise ValueError(f"{path}:{lineno}: expected {N} indices")
            indices.append(tuple(int(x) for x in parts))
    return indices


def write_entries(out: TextIO, entries: Iterable[tuple[Sequence[int], float]]) -> None:
    """Write entry lines at 12 significant digits (absorbs solver roundoff)."""
    for ix, value in entries:
        out.write(" ".join(str(i) for i in ix) + f" {value:.12g}\n")
