"""Dead-time and coincidence kernels: both code paths must agree exactly."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np

from flqkd._kernels import (
    _count_coincidences_numpy,
    _count_coincidences_sequential,
    _dead_time_numpy,
    _dead_time_sequential,
    backend,
    count_coincidences,
    dead_time_filter,
)


def test_backend_reports_a_known_name():
    assert backend() in ("numba", "numpy")


def test_dead_time_known_case():
    times = np.array([0.0, 0.3, 1.0, 1.05, 1.11, 2.0])
    kept, free = dead_time_filter(times, 0.1, 0.0)
    assert kept.tolist() == [0.0, 0.3, 1.0, 1.11, 2.0]
    assert free == 2.1


def test_dead_time_zero_keeps_everything():
    times = np.linspace(0.0, 1.0, 50)
    kept, free = dead_time_filter(times, 0.0, 0.0)
    assert np.array_equal(kept, times)
    assert free == times[-1]


def test_dead_time_initial_free_carries_over_segments():
    first = np.array([0.0, 0.6])
    second = np.array([1.05, 1.2])
    _, free = dead_time_filter(first, 0.6, 0.0)
    kept, _ = dead_time_filter(second, 0.6, free)
    # 1.05 falls inside the dead window opened at t=0.6
    assert kept.tolist() == [1.2]


def test_dead_time_empty_input():
    kept, free = dead_time_filter(np.empty(0), 0.1, 0.7)
    assert kept.size == 0 and free == 0.7


def test_coincidence_known_case():
    trig = np.array([1.0, 2.0, 3.0])
    part = np.array([0.9996, 2.2, 2.9997, 3.0002])
    # window 1e-3 centered on each trigger: hits at 1.0 and 3.0 (two partners
    # in one window still count once)
    assert count_coincidences(trig, part, 5e-4, 0.0) == 2


def test_coincidence_shift_moves_the_window():
    # the shifted count pairs each trigger with partners offset earlier
    trig = np.array([1.0, 2.0])
    part = np.array([0.9, 1.9])
    assert count_coincidences(trig, part, 1e-3, 0.0) == 0
    assert count_coincidences(trig, part, 1e-3, 0.1) == 2


def test_coincidence_empty_inputs():
    assert count_coincidences(np.empty(0), np.array([1.0]), 1e-3, 0.0) == 0
    assert count_coincidences(np.array([1.0]), np.empty(0), 1e-3, 0.0) == 0


def test_paths_agree_on_random_streams():
    rng = np.random.default_rng(1234)
    for _ in range(60):
        n = int(rng.integers(0, 400))
        m = int(rng.integers(0, 400))
        scale = 10.0 ** rng.uniform(-3, 0)
        trig = np.sort(rng.uniform(0.0, 1.0, n)) * scale
        part = np.sort(rng.uniform(0.0, 1.0, m)) * scale
        dead = float(rng.uniform(0.0, 0.01)) * scale
        free0 = float(rng.uniform(0.0, 0.005)) * scale
        hw = float(rng.uniform(1e-5, 1e-2)) * scale
        off = float(rng.uniform(0.0, 0.1)) * scale

        ks, fs = _dead_time_sequential(trig, dead, free0)
        kv, fv = _dead_time_numpy(trig, dead, free0)
        assert np.array_equal(ks, kv) and fs == fv

        cs = _count_coincidences_sequential(trig, part, hw, off)
        cv = _count_coincidences_numpy(trig, part, hw, off)
        assert cs == cv

        kd, fd = dead_time_filter(trig, dead, free0)
        assert np.array_equal(kd, ks) and fd == fs
        assert count_coincidences(trig, part, hw, off) == cs


def test_disable_flag_selects_numpy_backend():
    code = "from flqkd._kernels import backend; print(backend())"
    env = dict(os.environ, FLQKD_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "numpy"


def test_simulation_identical_across_backends():
    code = (
        "from flqkd import MonitorSimConfig, simulate_monitor\n"
        "c = MonitorSimConfig(pair_rate=2e5, ase_rate_at_source=2e5, kappa=0.5,\n"
        "    f_e_true=0.4, tap_alice=1e-3, tap_bob=1e-3, det_eff_idler=0.9,\n"
        "    det_eff_alice=0.9, det_eff_bob=0.9, dead_time=5e-8, coinc_window=1e-9,\n"
        "    shift_offset=2e-7, duration=4.0, rng_seed=31337)\n"
        "print(repr(simulate_monitor(c)))\n"
    )
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, FLQKD_DISABLE_NUMBA=flag)
        r = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        outs.append(r.stdout)
    assert outs[0] == outs[1]
