"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import timeit

import numpy as np

from carleson import _pykernels, kernels


def cases(rng, M, n_arcs, n_centers, n_points):
    lo = rng.uniform(0, M, n_arcs)
    hi = lo + rng.exponential(M / 64, n_arcs)
    w = rng.random(n_arcs)
    c = 0.99 * np.sqrt(rng.random(n_centers)) * np.exp(2j * np.pi * rng.random(n_centers))
    p = 0.99 * np.sqrt(rng.random(n_points)) * np.exp(2j * np.pi * rng.random(n_points))
    pw = rng.random(n_points)
    return {
        "arc_accumulate": lambda b: b.arc_accumulate(lo, hi, w, M),
        "arc_max": lambda b: b.arc_max(lo, hi, w, M),
        "ball_weights": lambda b: b.ball_weights(c.real, c.imag, p.real, p.imag, pw, 0.76),
        "min_pseudo_distance": lambda b: b.min_pseudo_distance(p.real, p.imag),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=int, default=2**14, help="boundary samples")
    ap.add_argument("--arcs", type=int, default=200_000)
    ap.add_argument("--centers", type=int, default=2_000)
    ap.add_argument("--points", type=int, default=2_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if kernels.compiled_backend is None:
        print("compiled backend not available; timing numpy only")
    backends = [("numpy", _pykernels)]
    if kernels.compiled_backend is not None:
        backends.append(("cython", kernels.compiled_backend))

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for name, call in cases(rng, args.M, args.arcs, args.centers, args.points).items():
        times = []
        for _, backend in backends:
            call(backend)  # warm up
            times.append(min(timeit.repeat(lambda: call(backend), number=1, repeat=args.repeat)))
        speedup = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
        print(f"{name:<22}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times) + speedup)


if __name__ == "__main__":
    main()
