"""Compare the compiled and numpy tensor-sum backends.

Two workloads:

``raw``     one ``tensor_sum`` call on random data of a given size
``kernel``  a full kernel table row (``circle_sums``) on the default
            spectral grid at several radii, as used by the transforms

Run ``python3 benchmarks/bench_kernels.py --help`` for options.
"""
import argparse
import time

import numpy as np

from horofourier import _backend, _engine
from horofourier.transforms import default_lambda_rule


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def raw_case(n_nodes, rows, cols, modes, seed=0):
    rng = np.random.default_rng(seed)
    base = -np.abs(rng.normal(size=n_nodes))
    d = rng.normal(size=n_nodes)
    W = rng.normal(size=(modes, n_nodes))
    s_rows = 0.5 + 1j * rng.normal(size=rows)
    s_cols = 1j * rng.normal(size=cols)
    shift = np.zeros(rows)
    return base, d, W, s_rows, s_cols, shift


def kernel_case(t):
    rule = default_lambda_rule()
    s_rows = 0.5 * (1.0 + 1j * -rule.centers.astype(complex))
    s_cols = 0.5j * -rule.local.astype(complex)
    return lambda name: _engine.circle_sums(t, s_rows, s_cols, (0, 1, 2, 3), backend=name)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--nodes", type=int, default=4096)
    ap.add_argument("--rows", type=int, default=9)
    ap.add_argument("--cols", type=int, default=64)
    ap.add_argument("--modes", type=int, default=4)
    ap.add_argument("--radii", default="0.5,4,11.9")
    args = ap.parse_args(argv)

    names = sorted(_backend.BACKENDS)
    print(f"backends: {', '.join(names)} (active: {_backend.NAME})")

    args_raw = raw_case(args.nodes, args.rows, args.cols, args.modes)
    ref = None
    print(f"\nraw tensor_sum  N={args.nodes} R={args.rows} C={args.cols} K={args.modes}")
    for name in names:
        fn = _backend.BACKENDS[name]
        sec = best_of(lambda: fn(*args_raw), args.repeat)
        S, _ = fn(*args_raw)
        diff = 0.0 if ref is None else float(np.max(np.abs(S - ref)) / np.max(np.abs(ref)))
        ref = S if ref is None else ref
        print(f"  {name:<9} {sec * 1e3:9.2f} ms   rel. diff {diff:.1e}")

    print("\nkernel table row on the default spectral grid, modes 0..3")
    for t in (float(x) for x in args.radii.split(",")):
        run = kernel_case(t)
        line = [f"  t={t:<5g}"]
        ref = None
        for name in names:
            sec = best_of(lambda: run(name), args.repeat)
            S, n = run(name)
            diff = 0.0 if ref is None else float(np.max(np.abs(S - ref)) / np.max(np.abs(ref)))
            ref = S if ref is None else ref
            line.append(f"{name} {sec * 1e3:8.2f} ms ({n} pts, diff {diff:.0e})")
        print("   ".join(line))


if __name__ == "__main__":
    main()
