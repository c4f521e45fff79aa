"""Order-ideal enumeration, rank counting, and quadrant recognition.

Enumeration follows the standard duplicate-free discipline: an ideal is
only extended by insertion points with a larger id than the last point
added, so every ideal is produced exactly once, in ascending cardinality
with id-lexicographic tie-breaking. The per-level extension runs on the
array kernels (see :mod:`wdlat.kernels`).

``partition_convolution_oracle`` is the independent cross-check for rank
sizes: it computes partition counts by textbook dynamic programming and
convolves them, sharing no code with the enumeration path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .poset import Ideal, Poset, PosetError


@dataclass(frozen=True)
class RankProfile:
    """Number of ideals of each cardinality 0..N."""

    counts: tuple[int, ...]

    def __iter__(self):
        return iter(self.counts)


def _level_matrix(poset: Poset, level: Sequence[Ideal]) -> tuple[np.ndarray, np.ndarray]:
    n = len(poset)
    members = np.zeros((len(level), n), dtype=np.bool_)
    last = np.full(len(level), -1, dtype=np.int64)
    for r, ideal in enumerate(level):
        for p in ideal:
            members[r, p] = True
        if len(ideal):
            last[r] = ideal.members[-1]
    return members, last


def _rows_to_ideals(members: np.ndarray) -> list[Ideal]:
    return [Ideal(tuple(np.nonzero(row)[0])) for row in members]


def next_level(poset: Poset, level: Sequence[Ideal]) -> list[Ideal]:
    """All ideals obtained by one canonical extension of ``level``.

    Evaluated against the poset's current points; the result is in
    canonical order when the input level is.
    """
    cover, _ = poset.matrix_view()
    members, last = _level_matrix(poset, level)
    out, _ = kernels.active_backend().extend_level(cover, members, last)
    return _rows_to_ideals(out)


def ideals_by_level(poset: Poset, max_size: int) -> list[list[Ideal]]:
    """Ideals grouped by cardinality 0..max_size, each level canonical."""
    levels = [[Ideal()]]
    for _ in range(max_size):
        nxt = next_level(poset, levels[-1])
        levels.append(nxt)
        if not nxt:
            levels.extend([] for _ in range(max_size - len(levels) + 1))
            break
    return levels[: max_size + 1]


def enumerate_ideals(poset: Poset, max_size: int) -> list[Ideal]:
    """Every ideal of cardinality <= max_size, in canonical order."""
    out: list[Ideal] = []
    for level in ideals_by_level(poset, max_size):
        out.extend(level)
    return out


def rank_profile(poset: Poset, max_n: int) -> RankProfile:
    return RankProfile(tuple(len(lv) for lv in ideals_by_level(poset, max_n)))


def partition_convolution_oracle(d: int, max_n: int) -> list[int]:
    """Coefficients of the d-th power of the partition generating series.

    Independent of the enumeration machinery by design; used to
    cross-check rank profiles of constructed posets.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    parts = [0] * (max_n + 1)
    parts[0] = 1
    for part in range(1, max_n + 1):
        for n in range(part, max_n + 1):
            parts[n] += parts[n - part]
    out = [0] * (max_n + 1)
    out[0] = 1
    for _ in range(d):
        out = [
            sum(out[k] * parts[n - k] for k in range(n + 1))
            for n in range(max_n + 1)
        ]
    return out


def quadrant_check(poset: Poset, component: Iterable[int]) -> bool:
    """True iff the component is a grid-downward-closed quadrant truncation.

    Looks for a coordinate assignment where the point at (i, j) covers
    exactly the points at (i-1, j) and (i, j-1), both of which must be
    present whenever the coordinate is off an axis. Choices only arise for
    points with a single lower cover, and those must sit on an axis, so
    the backtracking stays tiny.
    """
    comp = sorted({int(p) for p in component})
    for p in comp:
        poset.weight(p)  # id validation
    if not comp:
        return False
    comp_set = set(comp)
    minimals = [p for p in comp if not poset.lower_covers(p)]
    if len(minimals) != 1:
        return False

    coords: dict[int, tuple[int, int]] = {}
    used: dict[tuple[int, int], int] = {}

    def candidates(p: int) -> list[tuple[int, int]]:
        covers = poset.lower_covers(p) & comp_set
        if not covers:
            return [(0, 0)] if p == minimals[0] else []
        if len(covers) == 1:
            (a, b) = coords[next(iter(covers))]
            out = []
            if b == 0:
                out.append((a + 1, 0))
            if a == 0:
                out.append((0, b + 1))
            return out
        if len(covers) == 2:
            (a, b), (c, d) = sorted(coords[q] for q in covers)
            if c == a + 1 and b == d + 1:
                return [(c, b)]
            return []
        return []

    def consistent() -> bool:
        for p, (i, j) in coords.items():
            expect = set()
            if i > 0:
                below = used.get((i - 1, j))
                if below is None:
                    return False
                expect.add(below)
            if j > 0:
                below = used.get((i, j - 1))
                if below is None:
                    return False
                expect.add(below)
            if expect != set(poset.lower_covers(p) & comp_set):
                return False
        return True

    def assign(idx: int) -> bool:
        if idx == len(comp):
            return consistent()
        p = comp[idx]
        for c in candidates(p):
            if c in used:
                continue
            coords[p] = c
            used[c] = p
            if assign(idx + 1):
                return True
            del coords[p]
            del used[c]
        return False

    return assign(0)
