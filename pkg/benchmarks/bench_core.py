"""Time the compiled kernels against the pure-Python fallback.

Run ``python benchmarks/bench_core.py [--repeat N]``. Each row reports the
best-of-N wall time per call for both backends and the speed-up.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from sphtriple import _pycore

try:
    from sphtriple import _core
except ImportError:  # extension not built
    _core = None


def cases(rng: np.random.Generator):
    z = rng.uniform(-20, 20, 20_000) + 1j * rng.uniform(-20, 20, 20_000)
    X, Y, Z = (rng.normal(size=(200_000, 4)) for _ in range(3))
    upper = (0.5 + 0j, 1.25 + 0j, -0.3 + 0j, 0.7 + 0j, 1.1 + 0j)
    lower = (2.5 + 0j, 1.75 + 0j, 1.9 + 0j, 2.2 + 0j)
    return {
        "loggamma scalar x1000": lambda m: [m.loggamma(v) for v in z[:1000]],
        "loggamma_array 20k": lambda m: m.loggamma_array(z),
        "hyper_advance 5F4, 20k terms": lambda m: m.hyper_advance(upper, lower, -1.0 + 0j, 0, 1 + 0j, 1 + 0j, 20_000, 0.0, 0, False),
        "triple kernel symplectic 200k": lambda m: m.triple_kernel_values(m.KIND_SYMPLECTIC, X, Y, Z, 2.0, 2.0, 2.0),
        "triple kernel distance 200k": lambda m: m.triple_kernel_values(m.KIND_DISTANCE, X, Y, Z, 2.0, 0.5, 1.0),
        "pair kernel inner 200k": lambda m: m.pair_kernel_values(m.KIND_INNER, X, Y, -0.3),
    }


def best_time(fn, module, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(module), number=1, repeat=repeat))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'case':34s} {'python':>11s} {'cython':>11s} {'speed-up':>9s}")
    for name, fn in cases(rng).items():
        t_py = best_time(fn, _pycore, args.repeat)
        if _core is None:
            print(f"{name:34s} {t_py * 1e3:9.2f}ms {'n/a':>11s} {'n/a':>9s}")
            continue
        t_c = best_time(fn, _core, args.repeat)
        print(f"{name:34s} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
