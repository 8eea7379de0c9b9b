"""Compare the numba and numpy bitmask kernels on random graphs.

    python3 bench/benchmark_kernels.py [--vertices 10 14 18] [--repeat 5]

Both backends live in ``termcut._kernels`` whatever the env flag says, so
one process can time both.  The numba timings exclude the first (compiling)
call.
"""
import argparse
from timeit import default_timer as timer

import numpy as np

from termcut import _kernels


def random_edges(n, density, seed):
    rng = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    eu = np.array([p[0] for p in pairs], dtype=np.int64)
    ev = np.array([p[1] for p in pairs], dtype=np.int64)
    w = rng.integers(1, 1000, size=len(pairs)).astype(np.int64)
    return eu, ev, w


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = timer()
        out = fn()
        times.append(timer() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, nargs="+", default=[10, 12, 14, 16, 18])
    ap.add_argument("--terminals", type=int, default=6)
    ap.add_argument("--density", type=float, default=0.4)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not _kernels.use_numba():
        print("numba backend inactive (TERMCUT_DISABLE_NUMBA set or numba missing); timing numpy only")
    print(f"{'n':>3} {'edges':>6} {'numpy cut':>11} {'numba cut':>11} {'numpy min':>11} {'numba min':>11} {'speedup':>8}")
    for n in args.vertices:
        eu, ev, w = random_edges(n, args.density, seed=n)
        positions = np.arange(min(args.terminals, n), dtype=np.int64)
        codes = 1 << len(positions)

        t_np, vals_np = best_of(lambda: _kernels.all_cut_values_numpy(n, eu, ev, w), args.repeat)
        t_np_min, min_np = best_of(lambda: _kernels.restrict_min_numpy(vals_np, positions, codes), args.repeat)
        row = f"{n:>3} {len(eu):>6} {t_np * 1e3:>9.2f}ms"
        if _kernels.use_numba():
            _kernels.all_cut_values(n, eu, ev, w)  # compile
            _kernels.restrict_min(vals_np, positions, codes)
            t_nb, vals_nb = best_of(lambda: _kernels.all_cut_values(n, eu, ev, w), args.repeat)
            t_nb_min, min_nb = best_of(lambda: _kernels.restrict_min(vals_nb, positions, codes), args.repeat)
            assert np.array_equal(vals_np, vals_nb) and np.array_equal(min_np, min_nb)
            speed = (t_np + t_np_min) / (t_nb + t_nb_min)
            row += f" {t_nb * 1e3:>9.2f}ms {t_np_min * 1e3:>9.2f}ms {t_nb_min * 1e3:>9.2f}ms {speed:>7.1f}x"
        else:
            row += f" {'-':>11} {t_np_min * 1e3:>9.2f}ms {'-':>11} {'-':>8}"
        print(row)


if __name__ == "__main__":
    main()
