"""Core data model: weighted points, the cover relation, and order ideals.

A :class:`Poset` is a growing set of *points*. Each point carries a positive
integer weight and the set of its lower covers, fixed at creation time.
Point ids are allocated sequentially, so lower covers always reference
earlier points and the cover relation is acyclic by construction.

The lattice under study is never materialised: its elements are identified
with the finite order ideals of the point poset, represented by
:class:`Ideal` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np


class PosetError(ValueError):
    """Malformed poset operation: bad weight, unknown id, frozen mutation."""


def point_name(pid: int) -> str:
    """Default display name for a point id: A..Z, then AA, AB, ..."""
    out = []
    pid += 1
    while pid > 0:
        pid, r = divmod(pid - 1, 26)
        out.append(chr(ord("A") + r))
    return "".join(reversed(out))


@dataclass(frozen=True)
class Ideal:
    """A downward-closed point set, stored as a sorted tuple of ids.

    Equality is structural and the sorted storage makes iteration order
    deterministic. Down-closedness is a property relative to a poset and
    is checked by :meth:`Poset.is_ideal`, not by this container.
    """

    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        normalized = tuple(sorted(set(int(m) for m in self.members)))
        object.__setattr__(self, "members", normalized)

    def __contains__(self, pid: int) -> bool:
        return pid in set(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical ordering key: ascending cardinality, then id-lex."""
        return (len(self.members), self.members)

    def with_point(self, pid: int) -> "Ideal":
        return Ideal(self.members + (pid,))

    def without_point(self, pid: int) -> "Ideal":
        return Ideal(tuple(m for m in self.members if m != pid))

    def label(self, poset: "Poset") -> str:
        return "{" + ",".join(poset.name(m) for m in self.members) + "}"


class Poset:
    """Append-only poset of weighted points with an upper-cover index.

    Single-writer: grow it with :meth:`add_point`, then :meth:`freeze` for
    read-only sharing. All query operations are safe on a frozen poset.
    """

    def __init__(self) -> None:
        self._weights: list[int] = []
        self._lower: list[frozenset[int]] = []
        self._upper: list[set[int]] = []
        self._names: list[str] = []
        self._name_to_id: dict[str, int] = {}
        self._provenance: list[Optional[Ideal]] = []
        self._down: dict[int, frozenset[int]] = {}
        self._frozen = False
        self._version = 0
        self._matrix_cache: Optional[tuple[int, np.ndarray, np.ndarray]] = None

    def __len__(self) -> int:
        return len(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.structure() == other.structure()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Poset({len(self)} points)"

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "Poset":
        self._frozen = True
        return self

    def point_ids(self) -> range:
        return range(len(self._weights))

    def _check_id(self, pid: int) -> int:
        if not 0 <= pid < len(self._weights):
            raise PosetError(f"unknown point id {pid!r}")
        return pid

    def weight(self, pid: int) -> int:
        return self._weights[self._check_id(pid)]

    def lower_covers(self, pid: int) -> frozenset[int]:
        return self._lower[self._check_id(pid)]

    def upper_covers(self, pid: int) -> frozenset[int]:
        return frozenset(self._upper[self._check_id(pid)])

    def name(self, pid: int) -> str:
        return self._names[self._check_id(pid)]

    def id_of(self, name: str) -> int:
        try:
            return self._name_to_id[name]
        except KeyError:
            raise PosetError(f"unknown point name {name!r}") from None

    def provenance(self, pid: int) -> Optional[Ideal]:
        return self._provenance[self._check_id(pid)]

    def add_point(
        self,
        weight: int,
        covers: Iterable[int],
        provenance: Optional[Ideal] = None,
        name: Optional[str] = None,
    ) -> int:
        """Append a point covering exactly ``covers``; returns its fresh id."""
        if self._frozen:
            raise PosetError("poset is frozen")
        if not isinstance(weight, int) or weight < 1:
            raise PosetError(f"weight must be a positive integer, got {weight!r}")
        cover_set = frozenset(int(c) for c in covers)
        for c in cover_set:
            self._check_id(c)
        pid = len(self._weights)
        if name is None:
            name = point_name(pid)
        if name in self._name_to_id:
            raise PosetError(f"duplicate point name {name!r}")
        self._weights.append(weight)
        self._lower.append(cover_set)
        self._upper.append(set())
        self._names.append(name)
        self._name_to_id[name] = pid
        self._provenance.append(provenance)
        for c in cover_set:
            self._upper[c].add(pid)
        self._version += 1
        return pid

    def truncate(self, size: int) -> None:
        """Drop all points with id >= ``size`` (backtracking support).

        Down-set memos of surviving points only reference earlier ids, so
        they stay valid.
        """
        if self._frozen:
            raise PosetError("poset is frozen")
        if size < 0 or size > len(self._weights):
            raise PosetError(f"cannot truncate {len(self._weights)} points to {size}")
        for pid in range(size, len(self._weights)):
            for c in self._lower[pid]:
                self._upper[c].discard(pid)
            del self._name_to_id[self._names[pid]]
            self._down.pop(pid, None)
        del self._weights[size:]
        del self._lower[size:]
        del self._upper[size:]
        del self._names[size:]
        del self._provenance[size:]
        self._version += 1

    def copy(self) -> "Poset":
        dup = Poset()
        dup._weights = list(self._weights)
        dup._lower = list(self._lower)
        dup._upper = [set(u) for u in self._upper]
        dup._names = list(self._names)
        dup._name_to_id = dict(self._name_to_id)
        dup._provenance = list(self._provenance)
        dup._down = dict(self._down)
        return dup

    def structure(self) -> tuple:
        """Creation-order structural summary, for equality and round trips."""
        return tuple(
            (self._names[i], self._weights[i], tuple(sorted(self._lower[i])))
            for i in self.point_ids()
        )

    # -- order queries ---------------------------------------------------

    def _as_id_set(self, ids: Iterable[int]) -> frozenset[int]:
        if isinstance(ids, Ideal):
            ids = ids.members
        out = frozenset(int(p) for p in ids)
        for p in out:
            self._check_id(p)
        return out

    def down_set(self, pid: int) -> frozenset[int]:
        """All points <= pid, memoized per point."""
        self._check_id(pid)
        cached = self._down.get(pid)
        if cached is None:
            acc: set[int] = {pid}
            for c in self._lower[pid]:
                acc |= self.down_set(c)
            cached = frozenset(acc)
            self._down[pid] = cached
        return cached

    def less_equal(self, a: int, b: int) -> bool:
        return self._check_id(a) in self.down_set(b)

    def is_ideal(self, ids: Iterable[int]) -> bool:
        """True iff ``ids`` is downward closed under the cover relation."""
        s = self._as_id_set(ids)
        return all(self._lower[p] <= s for p in s)

    def deletion_points(self, ideal: Iterable[int]) -> set[int]:
        """Maximal members of the ideal: removing any one keeps an ideal."""
        s = self._as_id_set(ideal)
        return {p for p in s if not (self._upper[p] & s)}

    def insertion_points(self, ideal: Iterable[int]) -> set[int]:
        """Points outside the ideal whose lower covers all lie inside."""
        s = self._as_id_set(ideal)
        return {
            q for q in self.point_ids() if q not in s and self._lower[q] <= s
        }

    def generated_ideal(self, generators: Iterable[int]) -> Ideal:
        """Smallest ideal containing the generators (down-closure)."""
        acc: set[int] = set()
        for g in self._as_id_set(generators):
            acc |= self.down_set(g)
        return Ideal(tuple(acc))

    def weight_sum(self, ids: Iterable[int]) -> int:
        return sum(self._weights[p] for p in self._as_id_set(ids))

    def heights(self) -> list[int]:
        """Longest-chain-below length per point (0 for minimal points)."""
        out: list[int] = []
        for pid in self.point_ids():
            covers = self._lower[pid]
            out.append(1 + max((out[c] for c in covers), default=-1))
        return out

    def components(self) -> list[frozenset[int]]:
        """Connected components of the cover graph, each sorted by min id."""
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for start in self.point_ids():
            if start in seen:
                continue
            stack = [start]
            comp: set[int] = set()
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(self._lower[v])
                stack.extend(self._upper[v])
            seen |= comp
            comps.append(frozenset(comp))
        return sorted(comps, key=min)

    def matrix_view(self) -> tuple[np.ndarray, np.ndarray]:
        """Cover matrix and weight vector for the array kernels.

        Returns ``(cover, weights)`` where ``cover[q, p]`` is True iff p is
        a lower cover of q. Cached until the poset grows or truncates.
        """
        if self._matrix_cache is not None and self._matrix_cache[0] == self._version:
            return self._matrix_cache[1], self._matrix_cache[2]
        n = len(self._weights)
        cover = np.zeros((n, n), dtype=np.bool_)
        for q in self.point_ids():
            for p in self._lower[q]:
                cover[q, p] = True
        weights = np.asarray(self._weights, dtype=np.int64).reshape(n)
        cover.setflags(write=False)
        weights.setflags(write=False)
        self._matrix_cache = (self._version, cover, weights)
        return cover, weights
