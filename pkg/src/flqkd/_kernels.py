"""Hot kernels for the coincidence simulator: dead-time filtering and
windowed coincidence counting over sorted timestamp arrays.

Both kernels exist twice: a sequential version compiled with numba when it
is importable, and a vectorized numpy version. Setting FLQKD_DISABLE_NUMBA=1
(any value other than 0/false) forces the numpy path. The two paths perform
identical float comparisons in identical order, so their outputs are
bit-identical; all random number generation happens outside the kernels.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_disabled() -> bool:
    flag = os.environ.get("FLQKD_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false")


if not _numba_disabled():
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba = None
else:
    numba = None

USING_NUMBA = numba is not None


def backend() -> str:
    return "numba" if USING_NUMBA else "numpy"


def _dead_time_sequential(times, dead_time, free_from):
    # non-paralyzable: accept the first event at or after the free time,
    # then block for dead_time
    out = np.empty(times.size, np.float64)
    m = 0
    free = free_from
    for i in range(times.size):
        t = times[i]
        if t >= free:
            out[m] = t
            m += 1
            free = t + dead_time
    return out[:m], free


def _dead_time_numpy(times, dead_time, free_from):
    if times.size == 0:
        return times.copy(), free_from
    start = int(np.searchsorted(times, free_from, "left"))
    if start >= times.size:
        return times[:0].copy(), free_from
    if dead_time <= 0.0:
        kept = times[start:].copy()
        return kept, kept[-1] + dead_time
    # successor table: first index at or after t_i + dead_time; chasing it
    # from the first live event reproduces the sequential greedy filter
    nxt = np.searchsorted(times, times + dead_time, "left")
    idx = []
    i = start
    n = times.size
    while i < n:
        idx.append(i)
        i = int(nxt[i])
    kept = times[np.array(idx, dtype=np.int64)].copy()
    return kept, kept[-1] + dead_time


def _count_coincidences_sequential(triggers, partners, half_window, offset):
    # a trigger at t scores when >= 1 partner lies in
    # [(t - offset) - half_window, (t - offset) + half_window]
    count = 0
    j = 0
    n = partners.size
    for i in range(triggers.size):
        d = triggers[i] - offset
        lo = d - half_window
        hi = d + half_window
        while j < n and partners[j] < lo:
            j += 1
        if j < n and partners[j] <= hi:
            count += 1
    return count


def _count_coincidences_numpy(triggers, partners, half_window, offset):
    if triggers.size == 0 or partners.size == 0:
        return 0
    d = triggers - offset
    first = np.searchsorted(partners, d - half_window, "left")
    last = np.searchsorted(partners, d + half_window, "right")
    return int(np.count_nonzero(last > first))


if USING_NUMBA:
    _dead_time_jit = numba.njit(cache=True)(_dead_time_sequential)
    _count_jit = numba.njit(cache=True)(_count_coincidences_sequential)

    def dead_time_filter(times, dead_time, free_from):
        return _dead_time_jit(
            np.ascontiguousarray(times, np.float64), float(dead_time), float(free_from)
        )

    def count_coincidences(triggers, partners, half_window, offset):
        return int(
            _count_jit(
                np.ascontiguousarray(triggers, np.float64),
                np.ascontiguousarray(partners, np.float64),
                float(half_window),
                float(offset),
            )
        )

else:

    def dead_time_filter(times, dead_time, free_from):
        return _dead_time_numpy(
            np.ascontiguousarray(times, np.float64), float(dead_time), float(free_from)
        )

    def count_coincidences(triggers, partners, half_window, offset):
        return _count_coincidences_numpy(
            np.ascontiguousarray(triggers, np.float64),
            np.ascontiguousarray(partners, np.float64),
            float(half_window),
            float(offset),
        )
