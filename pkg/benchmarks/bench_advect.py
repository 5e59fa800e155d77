"""Compare the compiled and numpy advection kernels.

    python benchmarks/bench_advect.py --sizes 33 65 129 257 --steps 100

Both kernels are run on the same radial monitor; the script also checks
that their outputs are bitwise identical.
"""
import argparse
import time

import numpy as np

from deformlab import _backend
from deformlab.fields import reference_coordinates
from deformlab.monitor import MonitorPair
from deformlab.poisson import velocity_from_monitor


def radial(n):
    x, y = reference_coordinates(n, n)
    return 1.0 + 2.0 * np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / (2 * 0.15**2))


def best_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[33, 65, 129, 257])
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    compiled = _backend.compiled_advect()
    if compiled is None:
        print("compiled kernel not built; only the numpy kernel is timed")
    print(f"{'lattice':>9} {'nodes':>7} {'numpy [s]':>10} {'compiled [s]':>13} {'speedup':>8} {'identical':>9}")
    for n in args.sizes:
        pair = MonitorPair.from_raw(radial(n))
        u = velocity_from_monitor(pair)
        x0, y0 = reference_coordinates(n, n)
        kernel_args = (x0, y0, 1.0 / pair.f0.values, 1.0 / pair.f1.values, u.ux, u.uy, args.steps)
        t_np, out_np = best_time(lambda: _backend.advect_numpy(*kernel_args), args.repeats)
        if compiled is None:
            print(f"{n:>5}x{n:<3} {n * n:>7} {t_np:>10.4f} {'-':>13} {'-':>8} {'-':>9}")
            continue
        t_c, out_c = best_time(lambda: compiled(*kernel_args), args.repeats)
        same = all(np.array_equal(a, b) for a, b in zip(out_np, out_c))
        print(f"{n:>5}x{n:<3} {n * n:>7} {t_np:>10.4f} {t_c:>13.4f} {t_np / t_c:>7.1f}x {str(same):>9}")


if __name__ == "__main__":
    main()
