#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python reference.

Both backends expose the same two sequential loops (RK4 frame integration
and double-reflection transport); this script runs each on identical inputs
and reports the median wall time plus the speedup.  Run from the repo root:

    python3 benchmarks/bench_kernels.py --n-steps 20000 --repeat 5
"""

import argparse
import time

import numpy as np

from framefield import _kernels as py_kernels

try:
    from framefield import _ckernels as c_kernels
except ImportError:
    c_kernels = None


def median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def bench_frenet(backend, n_steps, repeat):
    h = 10.0 / n_steps
    s_half = np.arange(2 * n_steps + 1) * (h / 2.0)
    kappa = 1.0 + 0.3 * np.sin(s_half)
    tau = 0.2 * np.cos(s_half)
    y0 = np.vstack([np.zeros(3), np.eye(3)])
    return median_time(lambda: backend.frenet_integrate(kappa, tau, y0, h, n_steps), repeat)


def bench_transport(backend, n_samples, repeat):
    t = np.linspace(0.0, 2.0 * np.pi, n_samples)
    pts = np.column_stack([np.cos(t), np.sin(t), 0.3 * np.sin(2.0 * t)])
    d1 = np.gradient(pts, t, axis=0)
    tg = d1 / np.linalg.norm(d1, axis=1)[:, None]
    n0 = np.cross(tg[0], [0.0, 0.0, 1.0])
    n0 /= np.linalg.norm(n0)
    normals0 = np.stack([n0, np.cross(tg[0], n0)])
    eta = np.ones(3)
    return median_time(lambda: backend.double_reflection(pts, tg, normals0, eta), repeat)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-steps", type=int, default=20000, help="RK4 steps for the frame integration")
    parser.add_argument("--n-samples", type=int, default=20000, help="samples for the transport loop")
    parser.add_argument("--repeat", type=int, default=5, help="repetitions; the median is reported")
    args = parser.parse_args()

    rows = []
    for name, bench, size in (
        ("frenet_integrate", bench_frenet, args.n_steps),
        ("double_reflection", bench_transport, args.n_samples),
    ):
        t_py = bench(py_kernels, size, args.repeat)
        if c_kernels is not None:
            t_c = bench(c_kernels, size, args.repeat)
            rows.append((name, size, t_py, t_c, t_py / t_c))
        else:
            rows.append((name, size, t_py, None, None))

    print("%-20s %8s %12s %12s %9s" % ("kernel", "size", "python [s]", "compiled [s]", "speedup"))
    for name, size, t_py, t_c, speedup in rows:
        if t_c is None:
            print("%-20s %8d %12.4f %12s %9s" % (name, size, t_py, "n/a", "n/a"))
        else:
            print("%-20s %8d %12.4f %12.4f %8.1fx" % (name, size, t_py, t_c, speedup))
    if c_kernels is None:
        print("compiled backend not importable; showing the python reference only")


if __name__ == "__main__":
    main()
