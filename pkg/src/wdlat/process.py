"""The ideal-iteration engine.

One iteration (:func:`step`) inspects an ideal of the growing poset:
its deletion points fix the required total insertion weight
(deletion weight sum plus the element's differential degree), the
already-present insertion points are subtracted, and the remainder is the
budget for new points, each of which covers exactly the deletion set.

:func:`construct` runs the iteration deterministically for unit weights;
:func:`search` explores every weight multiset when weights may vary,
deduplicating completed posets by canonical form.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from . import ideals as ideals_mod
from .canon import canonical_form
from .poset import Ideal, Poset, PosetError


class ProcessError(ValueError):
    """Invalid engine invocation (bad policy, weight mismatch, ...)."""


class ProcessWarning(UserWarning):
    """An old insertion point sits above the whole ideal being processed.

    That cannot happen when ideals are processed in a linear extension of
    containment; surfacing it flags a corrupted processing order.
    """


@dataclass(frozen=True)
class DegreeFunction:
    """Differential degree of a lattice element, keyed by ideal cardinality."""

    constant_degree: Optional[int] = None
    table: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if (self.constant_degree is None) == (self.table is None):
            raise ProcessError("specify exactly one of constant degree or table")
        if self.constant_degree is not None and self.constant_degree < 1:
            raise ProcessError("degree must be a positive integer")
        if self.table is not None and (
            not self.table or any(d < 1 for d in self.table)
        ):
            raise ProcessError("degree table entries must be positive integers")

    @classmethod
    def constant(cls, d: int) -> "DegreeFunction":
        return cls(constant_degree=int(d))

    @classmethod
    def by_size(cls, table: Sequence[int]) -> "DegreeFunction":
        return cls(table=tuple(int(d) for d in table))

    def degree_for(self, size: int) -> int:
        if self.constant_degree is not None:
            return self.constant_degree
        assert self.table is not None
        if size >= len(self.table):
            raise ProcessError(
                f"degree table covers ideal sizes < {len(self.table)}, got {size}"
            )
        return self.table[size]


@dataclass(frozen=True)
class WeightPolicy:
    """Unit weights (deterministic) or bounded weight search."""

    kind: str
    max_weight: int = 1
    max_new_points: int = 0

    @classmethod
    def unit(cls) -> "WeightPolicy":
        return cls(kind="unit")

    @classmethod
    def search(cls, max_weight: int, max_new_points: int) -> "WeightPolicy":
        if max_weight < 1:
            raise ProcessError("max_weight must be a positive integer")
        if max_new_points < 1:
            raise ProcessError("max_new_points must be a positive integer")
        return cls(kind="search", max_weight=max_weight, max_new_points=max_new_points)


@dataclass(frozen=True)
class StepOutcome:
    """The computed quantities of one iteration, before any points are added."""

    ideal: Ideal
    deletion_set: frozenset[int]
    total_insertion_weight: int
    old_insertion_points: frozenset[int]
    new_weight_budget: int


@dataclass(frozen=True)
class TraceRecord:
    outcome: StepOutcome
    created: tuple[tuple[int, int], ...]  # (point id, weight) in creation order


@dataclass
class ProcessTrace:
    """Per-ideal records of a construction run, keyed by ideal on demand."""

    records: list[TraceRecord] = field(default_factory=list)

    def __iter__(self) -> Iterator[TraceRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def append(self, record: TraceRecord) -> None:
        self.records.append(record)

    def by_ideal(self) -> dict[Ideal, TraceRecord]:
        return {rec.outcome.ideal: rec for rec in self.records}

    def record_for(self, ideal: Ideal) -> TraceRecord:
        for rec in self.records:
            if rec.outcome.ideal == ideal:
                return rec
        raise KeyError(f"no trace record for ideal {ideal.members}")


@dataclass(frozen=True)
class FailureWitness:
    """Negative new-weight budget: the construction cannot continue."""

    ideal: Ideal
    new_weight_budget: int
    poset: Poset


class ConstructionFailed(ProcessError):
    def __init__(self, witness: FailureWitness):
        super().__init__(
            f"negative new-point budget {witness.new_weight_budget} "
            f"at ideal {witness.ideal.members}"
        )
        self.witness = witness


@dataclass(frozen=True)
class ConstructResult:
    poset: Poset
    trace: ProcessTrace


def step(poset: Poset, ideal: Ideal, degree: DegreeFunction) -> StepOutcome:
    """Compute one iteration's quantities for ``ideal``.

    Pure with respect to its inputs; a negative budget is reported in the
    outcome and judged by the caller.
    """
    deletion = frozenset(poset.deletion_points(ideal))
    total = poset.weight_sum(deletion) + degree.degree_for(len(ideal))
    old = frozenset(poset.insertion_points(ideal))
    for q in old:
        if poset.generated_ideal(poset.lower_covers(q)) == ideal:
            warnings.warn(
                f"insertion point {poset.name(q)} lies above the whole ideal "
                f"{ideal.label(poset)}; it belongs to this iteration, not an "
                "earlier one",
                ProcessWarning,
                stacklevel=2,
            )
    budget = total - poset.weight_sum(old)
    return StepOutcome(
        ideal=ideal,
        deletion_set=deletion,
        total_insertion_weight=total,
        old_insertion_points=old,
        new_weight_budget=budget,
    )


def apply_new_points(
    poset: Poset, outcome: StepOutcome, weights: Sequence[int]
) -> list[int]:
    """Create one point per weight, each covering the outcome's deletion set."""
    if outcome.new_weight_budget < 0:
        raise ProcessError(
            f"cannot apply points to a negative budget {outcome.new_weight_budget}"
        )
    if sum(weights) != outcome.new_weight_budget:
        raise ProcessError(
            f"weights {list(weights)} sum to {sum(weights)}, "
            f"budget is {outcome.new_weight_budget}"
        )
    return [
        poset.add_point(w, outcome.deletion_set, provenance=outcome.ideal)
        for w in weights
    ]


def _unit_policy_step(
    poset: Poset, ideal: Ideal, degree: DegreeFunction, trace: ProcessTrace
) -> None:
    outcome = step(poset, ideal, degree)
    if outcome.new_weight_budget < 0:
        raise ConstructionFailed(
            FailureWitness(ideal, outcome.new_weight_budget, poset.copy().freeze())
        )
    created = apply_new_points(poset, outcome, [1] * outcome.new_weight_budget)
    trace.append(TraceRecord(outcome, tuple((pid, 1) for pid in created)))


def _construct_by_size(
    degree: DegreeFunction, max_ideal_size: int, trace: ProcessTrace
) -> Poset:
    poset = Poset()
    level = [Ideal()]
    for size in range(max_ideal_size + 1):
        if size:
            # Points created while processing this level only appear in
            # strictly larger ideals, so the level list stays complete.
            level = ideals_mod.next_level(poset, level)
        for ideal in level:
            _unit_policy_step(poset, ideal, degree, trace)
    return poset


def _construct_by_agenda(
    degree: DegreeFunction, max_ideal_size: int, trace: ProcessTrace
) -> Poset:
    """Queue-driven linear extension: each iteration enqueues the unions of
    every known containing ideal with every non-empty subset of its new
    points, in first-seen order. Oversized ideals are dropped unprocessed.
    """
    poset = Poset()
    queue: deque[Ideal] = deque([Ideal()])
    seen: dict[Ideal, None] = {Ideal(): None}
    processed: list[Ideal] = []
    while queue:
        ideal = queue.popleft()
        if len(ideal) > max_ideal_size:
            continue
        outcome = step(poset, ideal, degree)
        if outcome.new_weight_budget < 0:
            raise ConstructionFailed(
                FailureWitness(ideal, outcome.new_weight_budget, poset.copy().freeze())
            )
        created = apply_new_points(
            poset, outcome, [1] * outcome.new_weight_budget
        )
        for pid in created:
            for prior in processed:
                if prior != ideal and poset.lower_covers(pid) <= set(prior.members):
                    raise ProcessError(
                        f"agenda order violated containment: point "
                        f"{poset.name(pid)} belongs to already-processed "
                        f"ideal {prior.label(poset)}"
                    )
        processed.append(ideal)
        trace.append(TraceRecord(outcome, tuple((pid, 1) for pid in created)))
        if created:
            members = set(ideal.members)
            known = [k for k in seen if members <= set(k.members)]
            for base in known:
                for r in range(1, len(created) + 1):
                    for subset in itertools.combinations(created, r):
                        future = Ideal(base.members + subset)
                        if future not in seen:
                            seen[future] = None
                            queue.append(future)
    return poset


def construct(
    degree: DegreeFunction,
    policy: WeightPolicy,
    max_ideal_size: int,
    order: str = "size",
) -> ConstructResult:
    """Process every ideal of cardinality <= max_ideal_size, unit weights.

    ``order`` selects the linear extension: ``"size"`` (ascending
    cardinality, canonical tie-break) or ``"agenda"`` (the queue-driven
    extension that examines future ideals in first-seen order). Raises
    :class:`ConstructionFailed` if a budget goes negative, which cannot
    happen for a constant degree from the empty start.
    """
    if policy.kind != "unit":
        raise ProcessError("construct requires the unit weight policy; use search")
    if max_ideal_size < 0:
        raise ProcessError("max_ideal_size must be non-negative")
    trace = ProcessTrace()
    if order == "size":
        poset = _construct_by_size(degree, max_ideal_size, trace)
    elif order == "agenda":
        poset = _construct_by_agenda(degree, max_ideal_size, trace)
    else:
        raise ProcessError(f"unknown iteration order {order!r}")
    return ConstructResult(poset.freeze(), trace)


def weight_multisets(
    total: int, max_weight: int, max_parts: int
) -> list[tuple[int, ...]]:
    """Non-increasing tuples of positive weights summing to ``total``.

    New points of one step all cover the same set, so only the multiset of
    their weights matters; ordered compositions would duplicate isomorphic
    results.
    """
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, parts: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(parts))
            return
        if len(parts) == max_parts:
            return
        for part in range(min(cap, remaining), 0, -1):
            parts.append(part)
            rec(remaining - part, part, parts)
            parts.pop()

    rec(total, max_weight, [])
    return out


@dataclass
class SearchResult:
    """Distinct completed lattices plus exploration statistics."""

    lattices: list[ConstructResult]
    pruned_branches: int
    explored_choices: int
    root_branches: int
    truncated: bool


def search(
    degree: DegreeFunction,
    policy: WeightPolicy,
    max_ideal_size: int,
    branch_limit: int = 1_000_000,
) -> SearchResult:
    """Depth-first exploration of every weight choice, deduplicated.

    At each ideal with budget b > 0 the engine branches over every
    multiset of positive weights summing to b (parts <= max_weight, at
    most max_new_points parts). Branches that reach a negative budget are
    pruned and counted. Completed posets are deduplicated by canonical
    form. ``branch_limit`` caps the number of weight-choice applications;
    exceeding it flags the result as truncated.
    """
    if policy.kind != "search":
        raise ProcessError("search requires a search weight policy")
    if max_ideal_size < 0:
        raise ProcessError("max_ideal_size must be non-negative")

    poset = Poset()
    trace = ProcessTrace()
    found: dict[bytes, ConstructResult] = {}
    stats = SearchResult(
        lattices=[], pruned_branches=0, explored_choices=0,
        root_branches=0, truncated=False,
    )

    def run_level(size: int, level: list[Ideal], index: int) -> None:
        if stats.truncated:
            return
        if index == len(level):
            if size == max_ideal_size:
                key = canonical_form(poset)
                if key not in found:
                    snapshot = poset.copy().freeze()
                    found[key] = ConstructResult(
                        snapshot, ProcessTrace(list(trace.records))
                    )
                return
            nxt = ideals_mod.next_level(poset, level)
            run_level(size + 1, nxt, 0)
            return
        ideal = level[index]
        outcome = step(poset, ideal, degree)
        if outcome.new_weight_budget < 0:
            stats.pruned_branches += 1
            return
        choices = weight_multisets(
            outcome.new_weight_budget, policy.max_weight, policy.max_new_points
        )
        if ideal == Ideal():
            stats.root_branches = len(choices)
        for weights in choices:
            if stats.explored_choices >= branch_limit:
                stats.truncated = True
                return
            stats.explored_choices += 1
            mark = len(poset)
            created = apply_new_points(poset, outcome, weights)
            trace.append(
                TraceRecord(outcome, tuple(zip(created, weights)))
            )
            run_level(size, level, index + 1)
            trace.records.pop()
            poset.truncate(mark)

    run_level(0, [Ideal()], 0)
    stats.lattices = list(found.values())
    return stats
