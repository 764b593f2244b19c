"""Compare the compiled and pure-python statevector kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from amplearn import _kernels_py

try:
    from amplearn import _kernels
except ImportError:
    _kernels = None


def bench(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = []
    for n in (8, 12, 16):
        state = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        state /= np.linalg.norm(state)
        rounds = 2 * int(np.ceil(np.pi / 4 * np.sqrt(1 << n)))
        cases.append(
            (
                f"grover_success_curve n={n} rounds={rounds}",
                lambda k, n=n, r=rounds: k.grover_success_curve(n, 1, r),
            )
        )
        cases.append(
            (
                f"cubic_step n={n} x100",
                lambda k, s=state: [k.cubic_step(s, 3) for _ in range(100)],
            )
        )
        cases.append(
            (
                f"apply_rotation n={n} x100",
                lambda k, s=state: [k.apply_rotation(s, 0, "y", 0.3) for _ in range(100)],
            )
        )

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))

    print(f"{'case':44s}" + "".join(f"{name:>12s}" for name, _ in backends) + f"{'speedup':>10s}")
    for label, fn in cases:
        times = [bench(lambda k=k: fn(k), args.repeats) for _, k in backends]
        speedup = times[0] / times[-1] if len(times) > 1 else 1.0
        print(
            f"{label:44s}"
            + "".join(f"{t * 1e3:10.2f}ms" for t in times)
            + f"{speedup:9.1f}x"
        )


if __name__ == "__main__":
    main()
