"""Match-scoring kernels: numba JIT by default, pure numpy as a fallback.

The single hot operation is extending a pattern prefix by one coincidence.
A prefix's state is, per sequence, the running maximum utility of any match
ending at or before each window (-inf where no match exists). Extension
tests the candidate bitmask against each window and adds the candidate's
utility mass times the window duration on top of the best strictly-earlier
prefix score. Both backends implement the identical recurrence and produce
bit-identical float64 arrays.

Set INTERVALMINE_BACKEND=numpy to force the fallback (or =numba to require
the JIT); by default numba is used when importable.
"""
from __future__ import annotations

import os

import numpy as np

BACKEND_ENV = "INTERVALMINE_BACKEND"

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def active_backend() -> str:
    forced = os.environ.get(BACKEND_ENV, "").strip().lower()
    if forced == "numpy":
        return "numpy"
    if forced == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError(f"{BACKEND_ENV}=numba but numba is not installed")
        return "numba"
    if forced:
        raise RuntimeError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {forced!r}")
    return "numba" if HAVE_NUMBA else "numpy"


def extend_scores(
    masks: np.ndarray,
    durations: np.ndarray,
    lengths: np.ndarray,
    prev: np.ndarray,
    prev_base: float,
    cand_mask: np.ndarray,
    cand_putil: float,
) -> np.ndarray:
    """Score rows for prefix+candidate given the prefix's score rows.

    prev_base is the prefix score before the first window: 0.0 for the
    empty prefix, -inf for any non-empty prefix.
    """
    if active_backend() == "numba":
        out = np.empty_like(prev)
        _extend_numba(masks, durations, lengths, prev, prev_base, cand_mask, cand_putil, out)
        return out
    return _extend_numpy(masks, durations, lengths, prev, prev_base, cand_mask, cand_putil)


def _extend_numpy(masks, durations, lengths, prev, prev_base, cand_mask, cand_putil):
    n, cap, _ = masks.shape
    if cap == 0:
        return np.empty((n, 0), dtype=np.float64)
    fits = ((cand_mask[None, None, :] & ~masks) == 0).all(axis=2)
    fits &= np.arange(cap)[None, :] < lengths[:, None]
    shifted = np.empty((n, cap), dtype=np.float64)
    shifted[:, 0] = prev_base
    shifted[:, 1:] = prev[:, :-1]
    ended = np.where(fits, shifted + cand_putil * durations, -np.inf)
    return np.maximum.accumulate(ended, axis=1)


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _extend_numba(masks, durations, lengths, prev, prev_base, cand_mask, cand_putil, out):
        n, cap, words = masks.shape
        for s in range(n):
            run = -np.inf
            before = prev_base
            m = lengths[s]
            for j in range(m):
                fits = True
                for w in range(words):
                    if (cand_mask[w] & ~masks[s, j, w]) != np.uint64(0):
                        fits = False
                        break
                if fits:
                    cand = before + cand_putil * durations[s, j]
                    if cand > run:
                        run = cand
                before = prev[s, j]
                out[s, j] = run
            for j in range(m, cap):
                out[s, j] = run
