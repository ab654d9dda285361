"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import importlib
import timeit

import numpy as np

from lorpoly import _kernels_py


def cases():
    yield "ladder_word_coo 4 modes, n_max=8", "ladder_word_coo", (
        9, 4, np.array([0, 1, 2, 3], dtype=np.int64), np.array([1, 1, 0, 0], dtype=np.int64))
    yield "ladder_word_coo 6 modes, n_max=4", "ladder_word_coo", (
        5, 6, np.array([0, 3, 5], dtype=np.int64), np.array([1, 0, 1], dtype=np.int64))
    yield "casimir_coefficients n_max=10^5", "casimir_coefficients", (1.5, 1, 100_000)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _kernels_py}
    try:
        backends["cython"] = importlib.import_module("lorpoly._kernels")
    except ImportError:
        print("compiled extension not built; timing the pure-Python backend only")
    print(f"{'case':40s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup")
    for label, fn, fargs in cases():
        times = {b: min(timeit.repeat(lambda m=m: getattr(m, fn)(*fargs), number=1, repeat=args.repeat))
                 for b, m in backends.items()}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:40s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times.values()) + f"   {speed:7.1f}x")


if __name__ == "__main__":
    main()
