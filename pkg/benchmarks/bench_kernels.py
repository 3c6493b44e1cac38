"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs once untimed (numba compiles on first call), then the best
of N runs is reported. Results of both backends are compared before timing.
"""
import argparse
import time

import numpy as np

from cohiggs import kernels
from cohiggs.p1 import SplittingType, random_field_array


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    for twists, gamma, n in (([3, 1, 0, -2], -1, 2000), ([4, 2, 0, -1, -3], -1, 2000), ([2, 0, -1, -3, -6], -2, 2000)):
        split = SplittingType.from_twists(twists)
        fields, degrees = random_field_array(split, gamma, n, rng)
        yield split, gamma, fields, degrees


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        kernels.get_backend("numba")
    except ImportError:
        print("numba not importable; nothing to compare")
        return 1

    # sparse small entries, like the commutant systems; dense random ones
    # overflow int64 and send both backends to the exact Python path
    rng = np.random.default_rng(1)
    mats = rng.integers(-1, 2, size=(300, 40, 40)) * (rng.random((300, 40, 40)) < 0.15)
    mats[:, -1] = mats[:, 0] + mats[:, 1]

    print(f"{'kernel':<22}{'case':<28}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for split, gamma, fields, degrees in cases():
        label = f"{split} g={gamma}"
        cap = split.rank + 1
        jobs = {
            "nilpotency_indices": lambda b: kernels.nilpotency_indices(fields, degrees, gamma, cap, backend=b),
            "commutant_ranks": lambda b: kernels.commutant_ranks(fields, split.twists, gamma, backend=b),
        }
        for name, job in jobs.items():
            a, b = job("numpy"), job("numba")
            # -1 flags an int64 overflow; callers redo those exactly
            ok = (a >= 0) & (b >= 0)
            assert np.array_equal(a[ok], b[ok]), name
            t_np = best_of(lambda: job("numpy"), args.repeat)
            t_nb = best_of(lambda: job("numba"), args.repeat)
            print(f"{name:<22}{label[:27]:<28}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")

    def ranks(b):
        return [kernels.int_rank(m, backend=b) for m in mats]

    assert ranks("numpy") == ranks("numba")
    t_np = best_of(lambda: ranks("numpy"), args.repeat)
    t_nb = best_of(lambda: ranks("numba"), args.repeat)
    print(f"{'int_rank':<22}{'300 sparse 40x40':<28}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
