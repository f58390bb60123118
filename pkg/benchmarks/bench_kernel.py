#!/usr/bin/env python3
"""Benchmark the compiled lattice-sum kernel against the numpy fallback.

Times ``theta_sum`` and ``theta_sum_grad`` over a batch of sample points at
several truncation radii, reports the speedup, and cross-checks that both
backends agree to near machine precision.  If the compiled extension is not
built, only the fallback is timed.

Usage:
    python benchmarks/bench_kernel.py [--repeats N] [--points N]
"""

import argparse
import time

import numpy as np

from thetalab import PeriodMatrix
from thetalab import _kernel_py

try:
    from thetalab import _kernel
except ImportError:
    _kernel = None

RADII = (4, 8, 16, 32)


def sample_args(n_points: int, rng: np.random.Generator):
    """Kernel argument tuples (minus the radius) for a fixed period matrix."""
    Z = PeriodMatrix(0.1 + 1.0j, 0.05 + 0.3j, -0.2 + 1.2j)
    out = []
    for _ in range(n_points):
        v1 = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
        v2 = complex(rng.uniform(-2, 2), rng.uniform(-0.5, 0.5))
        out.append((0.75, 0.0, Z.z11, Z.z12, Z.z22, v1, v2))
    return out


def run(fn, args, radius, repeats):
    """Best-of-``repeats`` wall time for one pass over ``args``."""
    best = float("inf")
    values = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        values = [fn(*a, radius) for a in args]
        best = min(best, time.perf_counter() - t0)
    return best, values


def max_rel_diff(a, b):
    out = 0.0
    for x, y in zip(a, b):
        x = np.atleast_1d(np.asarray(x, dtype=complex))
        y = np.atleast_1d(np.asarray(y, dtype=complex))
        scale = max(np.abs(x).max(), np.abs(y).max(), 1e-300)
        out = max(out, float(np.abs(x - y).max() / scale))
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best-of)")
    parser.add_argument("--points", type=int, default=200, help="sample points per pass")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    batch = sample_args(args.points, rng)

    if _kernel is None:
        print("compiled extension not built; timing the numpy fallback only")
    else:
        print(f"comparing backends over {args.points} points, best of {args.repeats}")

    header = f"{'kernel':<16}{'radius':>7}{'python':>12}{'cython':>12}{'speedup':>9}{'rel diff':>11}"
    print(header)
    print("-" * len(header))
    for name in ("theta_sum", "theta_sum_grad"):
        for radius in RADII:
            t_py, v_py = run(getattr(_kernel_py, name), batch, radius, args.repeats)
            if _kernel is None:
                print(f"{name:<16}{radius:>7}{t_py * 1e3:>10.2f}ms{'-':>12}{'-':>9}{'-':>11}")
                continue
            t_cy, v_cy = run(getattr(_kernel, name), batch, radius, args.repeats)
            diff = max_rel_diff(v_py, v_cy)
            print(
                f"{name:<16}{radius:>7}{t_py * 1e3:>10.2f}ms{t_cy * 1e3:>10.2f}ms"
                f"{t_py / t_cy:>8.1f}x{diff:>11.1e}"
            )
            if diff > 1e-12:
                raise SystemExit(f"backend disagreement {diff:.3e} for {name} at radius {radius}")


if __name__ == "__main__":
    main()
