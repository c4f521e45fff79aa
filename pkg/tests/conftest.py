"""Shared fixtures: the worked 12-point example, constructed truncations,
and the hand-built triple-orphan poset."""

from __future__ import annotations

import pytest
from hypothesis import settings

from wdlat import DegreeFunction, Poset, WeightPolicy, construct

# JIT warm-up and allocation noise make wall-clock deadlines flaky.
settings.register_profile("wdlat", deadline=None)
settings.load_profile("wdlat")

# Cover structure of the worked two-quadrant example, points A..L in
# creation order. C,D grow over A; E,F over B; G,H,I complete the first
# quadrant's next rank and J,K,L the second's.
GOLDEN12_COVERS = [
    ("A", []),
    ("B", []),
    ("C", ["A"]),
    ("D", ["A"]),
    ("E", ["B"]),
    ("F", ["B"]),
    ("G", ["C"]),
    ("H", ["D"]),
    ("I", ["C", "D"]),
    ("J", ["E"]),
    ("K", ["F"]),
    ("L", ["E", "F"]),
]


def build_named(covers: list[tuple[str, list[str]]], weights=None) -> Poset:
    poset = Poset()
    ids: dict[str, int] = {}
    for k, (name, cov) in enumerate(covers):
        w = 1 if weights is None else weights[k]
        ids[name] = poset.add_point(w, [ids[c] for c in cov], name=name)
    return poset


@pytest.fixture
def golden12() -> Poset:
    return build_named(GOLDEN12_COVERS)


@pytest.fixture(scope="session")
def y2_h3():
    """The two-quadrant lattice poset constructed through ideal size 3.

    Agenda order, so the first twelve points carry the names A..L with
    exactly the GOLDEN12_COVERS structure; four frontier points follow.
    """
    return construct(
        DegreeFunction.constant(2), WeightPolicy.unit(), 3, order="agenda"
    ).poset


def build_star() -> Poset:
    """A point covered by three orphans, padded so that the differential
    condition holds on every ideal of size <= 3; the first failure is then
    forced at the ideal generated by the three orphans."""
    return build_named(
        [
            ("P", []),
            ("A1", ["P"]),
            ("A2", ["P"]),
            ("A3", ["P"]),
            ("B3", ["A3"]),
            ("E1", ["B3"]),
            ("C12", ["A1", "A2"]),
            ("C13", ["A1", "A3"]),
            ("C23", ["A2", "A3"]),
        ],
        weights=[2, 1, 1, 2, 2, 2, 2, 2, 2],
    )


@pytest.fixture
def star() -> Poset:
    return build_star()


def quadrant_poset(max_product: int) -> Poset:
    """Explicit quadrant truncation: grid points (i, j) with
    (i+1)(j+1) <= max_product, covers (i-1, j) and (i, j-1)."""
    pts = sorted(
        (i, j)
        for i in range(max_product)
        for j in range(max_product)
        if (i + 1) * (j + 1) <= max_product
    )
    poset = Poset()
    ids: dict[tuple[int, int], int] = {}
    for i, j in pts:
        covers = [ids[c] for c in ((i - 1, j), (i, j - 1)) if c in ids]
        ids[(i, j)] = poset.add_point(1, covers, name=f"p{i}_{j}")
    return poset
