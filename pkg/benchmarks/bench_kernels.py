#!/usr/bin/env python3
"""Compare the numba kernels with their plain numpy/Python fallbacks.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel is warmed up once (JIT compilation is reported separately) and
both variants are checked to agree before timing.
"""
import argparse
import time

import numpy as np

from rotadrop import DropParams, close_profile, revolve, solve_profile
from rotadrop import kernels
from rotadrop._jit import HAVE_NUMBA


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def row(name, t_nb, t_py, note=""):
    speed = t_py / t_nb if t_nb > 0 else float("inf")
    print(f"{name:<22} {t_nb * 1e3:>10.2f} ms {t_py * 1e3:>10.2f} ms {speed:>8.1f}x  {note}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    a, b, h = 1.0, 1.0, 1e-4
    n_mesh = 64 if args.quick else 128
    print(f"{'kernel':<22} {'numba':>13} {'fallback':>13} {'speedup':>9}")

    t0 = time.perf_counter()
    kernels.rk4_until_nb(a, b, 0.0, h, 10, np.inf)
    kernels.rk4_run_nb(a, b, 0.0, 0.0, 0.0, h, 2, 1, np.empty((3, 3)))
    print(f"(rk4 compile: {time.perf_counter() - t0:.2f} s)")

    t_nb, res_nb = best_of(lambda: kernels.rk4_until_nb(a, b, 0.0, h, 50_000_000, np.inf), args.repeat)
    t_py, res_py = best_of(lambda: kernels.rk4_until_py(a, b, 0.0, h, 50_000_000, np.inf), args.repeat)
    assert res_nb[0] == res_py[0] and abs(res_nb[1] - res_py[1]) < 1e-12
    row("rk4_until", t_nb, t_py, f"{res_nb[0]} steps")

    n = res_nb[0]
    buf_nb = np.empty((n // 8 + 1, 3))
    buf_py = np.empty_like(buf_nb)
    t_nb, _ = best_of(lambda: kernels.rk4_run_nb(a, b, 0.0, 0.0, 0.0, h, n, 8, buf_nb), args.repeat)
    t_py, _ = best_of(lambda: kernels.rk4_run_py(a, b, 0.0, 0.0, 0.0, h, n, 8, buf_py), args.repeat)
    assert np.allclose(buf_nb, buf_py, rtol=0, atol=1e-12)
    row("rk4_run", t_nb, t_py)

    closed = close_profile(solve_profile(DropParams(a, b)))
    mesh = revolve(closed, n_mesh, n_mesh)
    v = np.ascontiguousarray(mesh.vertices)
    f = np.ascontiguousarray(mesh.triangles)
    kernels.cotan_laplacian_nb(v, f)
    t_nb, (L_nb, A_nb, _) = best_of(lambda: kernels.cotan_laplacian_nb(v, f), args.repeat)
    t_py, (L_py, A_py, _) = best_of(lambda: kernels.cotan_laplacian_py(v, f), args.repeat)
    assert np.allclose(L_nb, L_py, atol=1e-12) and np.allclose(A_nb, A_py, atol=1e-14)
    row("cotan_laplacian", t_nb, t_py, f"{len(f)} triangles")

    curve = solve_profile(DropParams(-1.0, 2.0))
    ra, za = curve.r, curve.u
    zb = 2.0 * curve.u_end - za
    kernels.count_crossings_nb(ra, za, ra, zb, True)
    t_nb, c_nb = best_of(lambda: kernels.count_crossings_nb(ra, za, ra, zb, True), args.repeat)
    t_py, c_py = best_of(lambda: kernels.count_crossings_py(ra, za, ra, zb, True), args.repeat)
    assert c_nb == c_py
    row("count_crossings", t_nb, t_py, f"{c_nb} crossing(s)")


if __name__ == "__main__":
    main()
