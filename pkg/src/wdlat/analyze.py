"""Verification of the weighted-differential condition and orphan structure.

``verify_differential`` checks, for every ideal up to a stated horizon,
that the insertion weight sum equals the deletion weight sum plus the
element's differential degree. The derived identities and the
triple-orphan impossibility are consequences of that condition at nearby
ideals, so those checks refuse to run until the relevant horizon has been
verified clean.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .poset import Ideal, Poset
from .process import DegreeFunction


class UnverifiedPosetError(ValueError):
    """The differential condition was not verified on the required horizon."""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking the defining equation up to ``checked_horizon``.

    ``violations`` holds (ideal, insertion weight sum, deletion weight sum
    plus degree) triples in canonical order, so the minimal counterexample
    comes first. Empty violations means the condition held everywhere
    checked.
    """

    checked_horizon: int
    ideal_count: int
    violations: tuple[tuple[Ideal, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class OrphanReport:
    """Orphans (points covering exactly one point) and crowded parents."""

    orphans: frozenset[int]
    multi_orphan_parents: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RelationCheck:
    relation: str  # "base", "orphan", or "pair"
    subject: tuple[int, ...]
    holds: bool
    lhs: int
    rhs: int


@dataclass(frozen=True)
class DerivedRelationsReport:
    """Insertion structure around one point and the identities it forces.

    For a point P with constant degree d, writing [X] for generated
    ideals and using weights:

    * base:   w(P) + d  ==  sum over side insertions + sum over orphans,
      where the orphans are the insertion points of [P] covering P and
      the side insertions are the rest;
    * orphan: 2 w(A) - w(P)  ==  sum over insertion points of [A]
      covering only the orphan A;
    * pair:   w(P)  ==  sum over insertion points of [A, B] covering
      exactly the orphan pair {A, B}.
    """

    point: int
    side_insertions: frozenset[int]
    orphans: frozenset[int]
    orphan_extensions: dict[int, frozenset[int]]
    pair_extensions: dict[tuple[int, int], frozenset[int]]
    checks: tuple[RelationCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)


def verify_differential(
    poset: Poset, degree: DegreeFunction, max_ideal_size: int
) -> VerificationReport:
    """Check the defining equation on every ideal of size <= the horizon."""
    if max_ideal_size < 0:
        raise ValueError("max_ideal_size must be non-negative")
    cover, weights = poset.matrix_view()
    backend = kernels.active_backend()
    members = np.zeros((1, len(poset)), dtype=np.bool_)
    last = np.full(1, -1, dtype=np.int64)
    count = 0
    violations: list[tuple[Ideal, int, int]] = []
    for size in range(max_ideal_size + 1):
        if size:
            members, last = backend.extend_level(cover, members, last)
        if members.shape[0] == 0:
            break
        count += members.shape[0]
        degrees = np.full(
            members.shape[0], degree.degree_for(size), dtype=np.int64
        )
        lhs, rhs = backend.ideal_weight_checks(cover, weights, members, degrees)
        for r in np.nonzero(lhs != rhs)[0]:
            ideal = Ideal(tuple(np.nonzero(members[r])[0]))
            violations.append((ideal, int(lhs[r]), int(rhs[r])))
    return VerificationReport(max_ideal_size, count, tuple(violations))


def orphan_report(poset: Poset) -> OrphanReport:
    """Orphans plus every point with three or more orphan upper covers."""
    orphans = frozenset(
        q for q in poset.point_ids() if len(poset.lower_covers(q)) == 1
    )
    parents: list[tuple[int, int]] = []
    for p in poset.point_ids():
        k = sum(1 for q in poset.upper_covers(p) if q in orphans)
        if k >= 3:
            parents.append((p, k))
    return OrphanReport(orphans, tuple(parents))


def _require_verified(
    poset: Poset, degree: DegreeFunction, horizon: int, what: str
) -> None:
    report = verify_differential(poset, degree, horizon)
    if not report.ok:
        ideal, lhs, rhs = report.violations[0]
        raise UnverifiedPosetError(
            f"{what} requires the differential condition up to ideal size "
            f"{horizon}, but it fails at {ideal.label(poset)} ({lhs} != {rhs})"
        )


def derived_relations(poset: Poset, d: int, point: int) -> DerivedRelationsReport:
    """Evaluate the forced identities around ``point`` for constant degree d.

    The identities follow from the differential condition at the principal
    ideal of the point and its one- and two-orphan extensions, so the
    condition must verify clean up to that size first.
    """
    degree = DegreeFunction.constant(d)
    principal = poset.generated_ideal([point])
    _require_verified(poset, degree, len(principal) + 2, "derived_relations")

    insertions = poset.insertion_points(principal)
    orphans = frozenset(q for q in insertions if point in poset.lower_covers(q))
    side = frozenset(insertions) - orphans

    checks: list[RelationCheck] = []
    lhs = poset.weight(point) + d
    rhs = poset.weight_sum(side) + poset.weight_sum(orphans)
    checks.append(RelationCheck("base", (point,), lhs == rhs, lhs, rhs))

    orphan_ext: dict[int, frozenset[int]] = {}
    for a in sorted(orphans):
        ext = frozenset(
            q
            for q in poset.insertion_points(principal.with_point(a))
            if poset.lower_covers(q) == {a}
        )
        orphan_ext[a] = ext
        lhs = 2 * poset.weight(a) - poset.weight(point)
        rhs = poset.weight_sum(ext)
        checks.append(RelationCheck("orphan", (a,), lhs == rhs, lhs, rhs))

    pair_ext: dict[tuple[int, int], frozenset[int]] = {}
    for a, b in itertools.combinations(sorted(orphans), 2):
        pair_ideal = principal.with_point(a).with_point(b)
        ext = frozenset(
            q
            for q in poset.insertion_points(pair_ideal)
            if poset.lower_covers(q) == {a, b}
        )
        pair_ext[(a, b)] = ext
        lhs = poset.weight(point)
        rhs = poset.weight_sum(ext)
        checks.append(RelationCheck("pair", (a, b), lhs == rhs, lhs, rhs))

    return DerivedRelationsReport(
        point=point,
        side_insertions=side,
        orphans=orphans,
        orphan_extensions=orphan_ext,
        pair_extensions=pair_ext,
        checks=tuple(checks),
    )


def triple_orphan_check(
    poset: Poset, d: int, max_ideal_size: int
) -> list[int]:
    """Points with three or more orphan covers, after verifying the horizon.

    For a constant degree the differential condition makes such points
    impossible, so on a verified lattice this returns the empty list.
    """
    _require_verified(
        poset, DegreeFunction.constant(d), max_ideal_size, "triple_orphan_check"
    )
    return [p for p, _ in orphan_report(poset).multi_orphan_parents]
