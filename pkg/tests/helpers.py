"""Brute-force helpers shared by the tests."""

import numpy as np


def span_of(rows, m, n):
    """Every Z/m-combination of ``rows``, as a set of tuples (brute force)."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    out = {tuple([0] * n)}
    for r in rows:
        out = {tuple((np.array(v) + k * r) % m) for v in out for k in range(m)}
    return out
