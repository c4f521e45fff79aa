"""Numba-compiled kernels; same contracts as the NumPy fallback.

Compiled lazily on first call with on-disk caching, so repeated runs skip
the JIT cost. Keep loop bodies allocation-free: posets stay small but the
row counts grow with the enumeration horizon.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def extend_level(cover, members, last):
    m, n = members.shape
    total = 0
    for r in range(m):
        for q in range(last[r] + 1, n):
            if members[r, q]:
                continue
            ok = True
            for p in range(n):
                if cover[q, p] and not members[r, p]:
                    ok = False
                    break
            if ok:
                total += 1
    out = np.zeros((total, n), dtype=np.bool_)
    out_last = np.zeros(total, dtype=np.int64)
    w = 0
    for r in range(m):
        for q in range(last[r] + 1, n):
            if members[r, q]:
                continue
            ok = True
            for p in range(n):
                if cover[q, p] and not members[r, p]:
                    ok = False
                    break
            if ok:
                for p in range(n):
                    out[w, p] = members[r, p]
                out[w, q] = True
                out_last[w] = q
                w += 1
    return out, out_last


@njit(cache=True)
def ideal_weight_checks(cover, weights, members, degrees):
    m, n = members.shape
    lhs = np.zeros(m, dtype=np.int64)
    rhs = np.zeros(m, dtype=np.int64)
    for r in range(m):
        ins = 0
        dele = 0
        for q in range(n):
            if members[r, q]:
                top = True
                for u in range(n):
                    if members[r, u] and cover[u, q]:
                        top = False
                        break
                if top:
                    dele += weights[q]
            else:
                ok = True
                for p in range(n):
                    if cover[q, p] and not members[r, p]:
                        ok = False
                        break
                if ok:
                    ins += weights[q]
        lhs[r] = ins
        rhs[r] = dele + degrees[r]
    return lhs, rhs
