"""Timing comparison of the numba and numpy kernel paths.

Runs the two hot kernels on synthetic streams in-process, then times one
full monitor simulation per backend in a subprocess (the backend is chosen
at import time, so the full-pipeline comparison needs a fresh interpreter).

Usage: python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import os
import subprocess
import sys
import time

import numpy as np

from flqkd._kernels import (
    _count_coincidences_numpy,
    _count_coincidences_sequential,
    _dead_time_numpy,
    _dead_time_sequential,
    backend,
)

if backend() == "numba":
    from flqkd._kernels import _count_jit, _dead_time_jit

    _dead_fast = _dead_time_jit
    _count_fast = _count_jit
else:
    _dead_fast = None
    _count_fast = None

N_EVENTS = 2_000_000
REPEATS = 5

_SIM_SNIPPET = """
import time
from flqkd import MonitorSimConfig, simulate_monitor
from flqkd._kernels import backend
cfg = MonitorSimConfig(
    pair_rate=2.46e5, ase_rate_at_source=2.46e5, kappa=0.9, f_e_true=0.5,
    tap_alice=1e-3, tap_bob=1e-3, det_eff_idler=0.95, det_eff_alice=0.95,
    det_eff_bob=0.95, dead_time=5e-8, coinc_window=1e-9, shift_offset=2e-7,
    duration=30.0, rng_seed=271828)
simulate_monitor(cfg)  # warm-up comes free with compilation
t0 = time.perf_counter()
simulate_monitor(cfg)
print(f"{backend():>6}: {time.perf_counter() - t0:7.3f} s per 30 s simulated run")
"""


def _time(fn, *args) -> float:
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    rng = np.random.default_rng(1)
    times = np.sort(rng.uniform(0.0, 10.0, N_EVENTS))
    partners = np.sort(rng.uniform(0.0, 10.0, N_EVENTS))
    dead = 5e-6
    hw, off = 5e-7, 1e-4

    print(f"active backend: {backend()}   ({N_EVENTS:,} events, best of {REPEATS})")
    rows = [
        ("dead time, python", _time(_dead_time_sequential, times, dead, 0.0)),
        ("dead time, numpy", _time(_dead_time_numpy, times, dead, 0.0)),
        ("coincidences, python", _time(_count_coincidences_sequential, times, partners, hw, off)),
        ("coincidences, numpy", _time(_count_coincidences_numpy, times, partners, hw, off)),
    ]
    if _dead_fast is not None:
        _dead_fast(times[:10], dead, 0.0)  # trigger compilation outside timing
        _count_fast(times[:10], partners[:10], hw, off)
        rows.insert(2, ("dead time, numba", _time(_dead_fast, times, dead, 0.0)))
        rows.append(("coincidences, numba", _time(_count_fast, times, partners, hw, off)))
    for name, t in rows:
        print(f"  {name:22} {t * 1e3:9.2f} ms   {N_EVENTS / t / 1e6:7.1f} Mevents/s")

    print("full simulation, one fresh interpreter per backend:")
    for flag in ("0", "1"):
        out = subprocess.run(
            [sys.executable, "-c", _SIM_SNIPPET],
            env=dict(os.environ, FLQKD_DISABLE_NUMBA=flag),
            capture_output=True,
            text=True,
            check=True,
        )
        print("  " + out.stdout.strip())


if __name__ == "__main__":
    main()
