"""Bitmask enumeration kernels.

Two implementations of each kernel: a numba ``@njit`` version for int64
weights and a vectorised numpy version that also accepts ``dtype=object``
arrays of Python ints (used when scaled capacities would overflow int64).

Set ``TERMCUT_DISABLE_NUMBA=1`` to force the numpy path.  The flag is read
at import time; ``use_numba()`` reports the active backend.
"""
import os

import numpy as np

_DISABLE = os.environ.get("TERMCUT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLE:
        raise ImportError
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    _HAVE_NUMBA = False

# int64 headroom kept for the running sums in the kernels
INT64_SAFE = 2**62


def use_numba():
    return _HAVE_NUMBA


def all_cut_values_numpy(n, eu, ev, w):
    """Cut capacity of every vertex mask ``0 .. 2**n - 1``."""
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=w.dtype)
    for u, v, c in zip(eu.tolist(), ev.tolist(), w.tolist()):
        crosses = ((masks >> u) ^ (masks >> v)) & 1
        if w.dtype == object:
            out = out + crosses.astype(object) * c
        else:
            out += crosses * c
    return out


def restrict_min_numpy(values, positions, n_codes):
    """Minimum of ``values`` grouped by the sub-mask read at ``positions``.

    Entry ``code`` of the result is the minimum over all vertex masks whose
    bits at ``positions`` spell ``code``.
    """
    masks = np.arange(values.shape[0], dtype=np.int64)
    codes = np.zeros(values.shape[0], dtype=np.int64)
    for i, p in enumerate(positions.tolist()):
        codes |= ((masks >> p) & 1) << i
    order = np.lexsort((values, codes)) if values.dtype != object else _object_order(values, codes)
    first = np.ones(order.shape[0], dtype=bool)
    sorted_codes = codes[order]
    first[1:] = sorted_codes[1:] != sorted_codes[:-1]
    out = np.empty(n_codes, dtype=values.dtype)
    out[sorted_codes[first]] = values[order][first]
    return out


def _object_order(values, codes):
    return np.array(sorted(range(values.shape[0]), key=lambda i: (codes[i], values[i])), dtype=np.int64)


if _HAVE_NUMBA:

    @njit(cache=True)
    def _all_cut_values_jit(n, eu, ev, w):
        total = 1 << n
        out = np.zeros(total, dtype=np.int64)
        m = eu.shape[0]
        for mask in range(total):
            acc = 0
            for j in range(m):
                if ((mask >> eu[j]) ^ (mask >> ev[j])) & 1:
                    acc += w[j]
            out[mask] = acc
        return out

    @njit(cache=True)
    def _restrict_min_jit(values, positions, n_codes):
        out = np.full(n_codes, -1, dtype=np.int64)
        npos = positions.shape[0]
        for mask in range(values.shape[0]):
            code = 0
            for i in range(npos):
                code |= ((mask >> positions[i]) & 1) << i
            val = values[mask]
            if out[code] < 0 or val < out[code]:
                out[code] = val
        return out


def all_cut_values(n, eu, ev, w):
    if _HAVE_NUMBA and w.dtype == np.int64:
        return _all_cut_values_jit(n, eu, ev, w)
    return all_cut_values_numpy(n, eu, ev, w)


def restrict_min(values, positions, n_codes):
    if _HAVE_NUMBA and values.dtype == np.int64:
        return _restrict_min_jit(values, positions, n_codes)
    return restrict_min_numpy(values, positions, n_codes)
