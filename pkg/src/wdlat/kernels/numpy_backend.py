"""Pure-NumPy fallback implementations of the per-ideal kernels.

All functions take the frozen cover matrix ``cover`` with
``cover[q, p] == True`` iff p is a lower cover of q. Ideals travel as
boolean membership rows. Semantics and output order are identical to the
JIT backend; tests cross-check the two.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def extend_level(
    cover: np.ndarray, members: np.ndarray, last: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Grow every ideal row by each addable point above its last-added id.

    Rows are emitted parent-major with ascending new point id, which keeps
    the global level order canonical (ascending id-lex) by induction.
    """
    m, n = members.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.bool_), np.zeros(0, dtype=np.int64)
    missing = ~members @ cover.T  # [r, q]: any lower cover of q outside row r
    addable = ~members & ~missing
    ext = addable & (np.arange(n)[None, :] > last[:, None])
    counts = ext.sum(axis=1)
    rows, qs = np.nonzero(ext)
    out = np.repeat(members, counts, axis=0)
    out[np.arange(len(qs)), qs] = True
    return out, qs.astype(np.int64)


def ideal_weight_checks(
    cover: np.ndarray,
    weights: np.ndarray,
    members: np.ndarray,
    degrees: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Per row: insertion weight sum vs deletion weight sum plus degree."""
    m, n = members.shape
    if n == 0:
        lhs = np.zeros(m, dtype=np.int64)
        return lhs, lhs + degrees
    missing = ~members @ cover.T
    addable = ~members & ~missing
    covered = members @ cover
    maximal = members & ~covered
    lhs = addable.astype(np.int64) @ weights
    rhs = maximal.astype(np.int64) @ weights + degrees
    return lhs, rhs
