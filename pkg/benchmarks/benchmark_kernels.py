"""Compare the compiled and pure-Python kernel backends.

Times the three kernel entry points that dominate the construction
pipeline (polynomial products, gcds, fraction-free determinants) on
deterministic inputs, then an end-to-end higher-operator build in a
subprocess per backend so the import-time selection is exercised too.

Run from the repository root:

    python3 benchmarks/benchmark_kernels.py
"""

import argparse
import random
import subprocess
import sys
import time

from krall_dual_hahn import _kernels_py

try:
    from krall_dual_hahn import _kernels_c
except ImportError:
    _kernels_c = None


def _random_poly(rng, degree, digits):
    lo, hi = 10 ** (digits - 1), 10**digits
    coeffs = [rng.randint(lo, hi) * rng.choice((1, -1)) for _ in range(degree + 1)]
    coeffs[-1] = abs(coeffs[-1])
    return coeffs


def bench_mul(impl, rng):
    a = _random_poly(rng, 80, 40)
    b = _random_poly(rng, 80, 40)
    t0 = time.perf_counter()
    for _ in range(200):
        impl.zp_mul(a, b)
    return time.perf_counter() - t0


def bench_gcd(impl, rng):
    g = _random_poly(rng, 12, 6)
    a = impl.zp_mul(g, _random_poly(rng, 10, 6))
    b = impl.zp_mul(g, _random_poly(rng, 10, 6))
    t0 = time.perf_counter()
    for _ in range(20):
        impl.zp_gcd(a, b)
    return time.perf_counter() - t0


def bench_det(impl, rng):
    matrix = [
        [_random_poly(rng, 3, 4) for _ in range(6)]
        for _ in range(6)
    ]
    t0 = time.perf_counter()
    for _ in range(40):
        impl.bareiss_det(matrix)
    return time.perf_counter() - t0


END_TO_END = (
    "from fractions import Fraction\n"
    "from krall_dual_hahn.krall_builder import KrallInstance, build_higher_op\n"
    "inst = KrallInstance(Fraction(1, 2), Fraction(1, 3), 7, (1,), (1,), (1,))\n"
    "build_higher_op(inst)\n"
)


def bench_end_to_end(backend):
    t0 = time.perf_counter()
    subprocess.run(
        [sys.executable, "-c", END_TO_END],
        check=True,
        env={"KRALL_DUAL_HAHN_KERNELS": backend, "PATH": "/usr/bin:/bin"},
    )
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument(
        "--skip-end-to-end", action="store_true", help="kernel micro-benchmarks only"
    )
    args = parser.parse_args()

    if _kernels_c is None:
        print("compiled backend unavailable; nothing to compare")
        return 1

    rows = []
    for name, fn in [("poly-mul", bench_mul), ("poly-gcd", bench_gcd), ("bareiss-det", bench_det)]:
        t_py = fn(_kernels_py, random.Random(args.seed))
        t_c = fn(_kernels_c, random.Random(args.seed))
        rows.append((name, t_py, t_c))
    if not args.skip_end_to_end:
        rows.append(
            ("higher-op build", bench_end_to_end("py"), bench_end_to_end("c"))
        )

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>9}  {'compiled':>9}  {'speedup':>7}")
    for name, t_py, t_c in rows:
        print(f"{name:<{width}}  {t_py:>8.3f}s  {t_c:>8.3f}s  {t_py / t_c:>6.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
