"""Times the compiled and pure-Python kernels side by side.

    python3 benchmarks/bench_kernels.py
"""
import timeit

from quadtors import _kernels_py as py

try:
    from quadtors import _kernels as cy
except ImportError:
    cy = None

CASES = {
    "count_points(p=1009)": lambda m: m.count_points(0, -1, 1, -10, -20, 1009),
    "trial_divide(2^20*3^7*1000003)": lambda m: m.trial_divide(2**20 * 3**7 * 1000003, 10**4),
    "roots_mod_p(deg 4, p=10007)": lambda m: m.roots_mod_p([3, 0, -7, 1, 1], 10007),
}


def main(number: int = 20):
    print(f"{'kernel':34s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in CASES.items():
        tp = timeit.timeit(lambda: fn(py), number=number) / number * 1e3
        if cy is None:
            print(f"{name:34s} {tp:10.3f} {'-':>10s} {'-':>8s}")
            continue
        assert fn(py) == fn(cy), name
        tc = timeit.timeit(lambda: fn(cy), number=number) / number * 1e3
        print(f"{name:34s} {tp:10.3f} {tc:10.3f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
