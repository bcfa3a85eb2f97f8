#!/usr/bin/env python3
"""Benchmark the exhaustive-sweep kernel: numba path vs pure-Python fallback.

The pure-Python path is selected by RAYDIAGRAM_NO_NUMBA=1 in normal use;
here both run side by side on the same code range.

    python3 benchmarks/bench_sweep.py [count]
"""

import sys
import time

import numpy as np

from raydiagram.exhaustive import numba_available, perm_tables, sweep_mirror_range


def bench_python(count):
    t0 = time.time()
    checked, bad = sweep_mirror_range(4, 5, 0, count)
    return time.time() - t0, checked, len(bad)


def bench_numba(count):
    from raydiagram import _njit_sweep

    perms = np.array(perm_tables(4), dtype=np.int64)
    out_counts = np.zeros((1, 2), dtype=np.int64)
    out_bad = np.full(1, -1, dtype=np.int64)
    # warm-up triggers compilation (cached across runs)
    _njit_sweep._run_chunk(0, 64, 1, 6, perms, out_counts, out_bad, 0)
    t0 = time.time()
    _njit_sweep._run_chunk(0, count, 1, 6, perms, out_counts, out_bad, 0)
    return time.time() - t0, int(out_counts[0, 0]), int(out_counts[0, 1])


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    dt_py, checked_py, bad_py = bench_python(count)
    print(f"python : {count} codes, {checked_py} canonical, "
          f"{bad_py} mismatches, {dt_py:.2f}s "
          f"({dt_py / max(checked_py, 1) * 1e6:.0f} us/canonical)")
    if not numba_available():
        print("numba  : unavailable (or RAYDIAGRAM_NO_NUMBA set), skipped")
        return
    dt_nb, checked_nb, bad_nb = bench_numba(count)
    print(f"numba  : {count} codes, {checked_nb} canonical, "
          f"{bad_nb} mismatches, {dt_nb:.2f}s "
          f"({dt_nb / max(checked_nb, 1) * 1e6:.1f} us/canonical)")
    if checked_py != checked_nb:
        raise SystemExit("canonical counts differ between paths")
    print(f"speedup: {dt_py / dt_nb:.0f}x")


if __name__ == "__main__":
    main()
