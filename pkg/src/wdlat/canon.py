"""Relabeling-invariant canonical forms for weighted posets.

Iterative refinement by (weight, cover-degree) signatures, with an
exhaustive individualize-and-refine search over residual ties. At desk
scale (a few hundred points) this is exact: two posets get equal forms
iff they are isomorphic as weighted posets.
"""

from __future__ import annotations

from .poset import Poset, PosetError

SIZE_GUARD = 512


class CanonicalSizeError(PosetError):
    """Poset too large for the exhaustive canonical-form search."""


def _refine(
    colors: list[int],
    lower: list[tuple[int, ...]],
    upper: list[tuple[int, ...]],
) -> list[int]:
    n = len(colors)
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[u] for u in lower[v])),
                tuple(sorted(colors[u] for u in upper[v])),
            )
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(poset: Poset) -> bytes:
    """Byte encoding equal across relabelings, distinct across weights."""
    n = len(poset)
    if n > SIZE_GUARD:
        raise CanonicalSizeError(
            f"canonical form limited to {SIZE_GUARD} points, got {n}"
        )
    if n == 0:
        return b"poset:0:;"
    weights = [poset.weight(v) for v in poset.point_ids()]
    lower = [tuple(poset.lower_covers(v)) for v in poset.point_ids()]
    upper = [tuple(poset.upper_covers(v)) for v in poset.point_ids()]

    initial = [
        (weights[v], len(lower[v]), len(upper[v])) for v in range(n)
    ]
    rank = {s: i for i, s in enumerate(sorted(set(initial)))}
    colors = _refine([rank[s] for s in initial], lower, upper)

    best: bytes | None = None

    def encode(order_colors: list[int]) -> bytes:
        pos = [0] * n
        for v, c in enumerate(order_colors):
            pos[v] = c
        by_pos = sorted(range(n), key=lambda v: pos[v])
        ws = tuple(weights[v] for v in by_pos)
        edges = tuple(
            sorted((pos[u], pos[v]) for v in range(n) for u in lower[v])
        )
        return f"poset:{n}:{ws}:{edges};".encode("ascii")

    def search(colors: list[int]) -> None:
        nonlocal best
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            enc = encode(colors)
            if best is None or enc < best:
                best = enc
            return
        cell = [v for v in range(n) if colors[v] == target]
        for v in cell:
            tweaked = [(c, 1 if u == v else 0) for u, c in enumerate(colors)]
            rank = {s: i for i, s in enumerate(sorted(set(tweaked)))}
            search(_refine([rank[s] for s in tweaked], lower, upper))

    search(colors)
    assert best is not None
    return best
