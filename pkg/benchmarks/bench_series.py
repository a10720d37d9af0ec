"""Benchmark the compiled series kernel against the pure-Python fallback.

Fills the same coefficient box with both kernel implementations and the
float backend, reports wall times and the speedup, then repeats once for
the exact backend (where the kernels share the same Python rational
arithmetic and the gap is expected to be small).
"""

import argparse
import time

from conediag.polycore import Rat, parse_polynomial
from conediag.series import HAVE_COMPILED_KERNEL, expand_power, make_spec

EX1 = "1 - (Z1 + Z2 + Z3) + 3/4*(Z1*Z2 + Z1*Z3 + Z2*Z3)"
EX2 = "1 - (Z1 + Z2 + Z3 + Z4) + 64/27*(Z1*Z2*Z3 + Z1*Z2*Z4 + Z1*Z3*Z4 + Z2*Z3*Z4)"


def time_fill(spec, bounds, backend: str, kernel: str, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        expand_power(spec, bounds, backend=backend, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=60, help="box bound per axis (d=3 case)")
    ap.add_argument("--order4", type=int, default=24, help="box bound per axis (d=4 case)")
    ap.add_argument("--repeat", type=int, default=3, help="take the best of this many runs")
    ap.add_argument("--skip-exact", action="store_true", help="only benchmark the float backend")
    args = ap.parse_args()

    if not HAVE_COMPILED_KERNEL:
        print("note: compiled kernel unavailable; python timings only")

    cases = [
        ("d=3 quadratic", EX1, ["Z1", "Z2", "Z3"], Rat(1), (args.order,) * 3),
        ("d=4 cubic", EX2, ["Z1", "Z2", "Z3", "Z4"], Rat(2), (args.order4,) * 4),
    ]
    backends = ["float"] if args.skip_exact else ["float", "exact"]
    print(f"{'case':<14} {'backend':<8} {'box':<12} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, text, variables, beta, bounds in cases:
        spec, _ = make_spec(parse_polynomial(text, variables), beta)
        box = "x".join(str(b + 1) for b in bounds)
        for backend in backends:
            tp = time_fill(spec, bounds, backend, "python", args.repeat)
            if HAVE_COMPILED_KERNEL:
                tc = time_fill(spec, bounds, backend, "cython", args.repeat)
                print(
                    f"{name:<14} {backend:<8} {box:<12} {tp:>9.3f}s {tc:>9.3f}s {tp / tc:>7.1f}x"
                )
            else:
                print(f"{name:<14} {backend:<8} {box:<12} {tp:>9.3f}s {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
