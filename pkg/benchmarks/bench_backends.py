"""Compare the compiled (gmpy2) and pure-Python (fractions) rational backends.

The package selects gmpy2's GMP-backed rationals at import when available
and falls back to the stdlib ``fractions.Fraction`` otherwise.  This script
times the hot kernels under both backends and prints the speedup.

Run:  python benchmarks/bench_backends.py [repeats]
"""

from __future__ import annotations

import random
import sys
import time

from wbcorr import rationals
from wbcorr.invariants import h_invariant, h_prime_oracle, localization_sum
from wbcorr.local_model import LocalModel
from wbcorr.ranking import c_to_Rd, moduli_dim, moduli_dim_oracle, sector_dim, window
from wbcorr.correspondence import solve_lower_triangular


def _models(rng):
    out = []
    for _ in range(40):
        n = rng.randint(1, 5)
        r = rng.randint(1, 6)
        out.append(
            LocalModel(
                r=r,
                beta=tuple(rng.randint(1, r) for _ in range(n)),
                alpha=tuple(rng.randint(1, 4) for _ in range(n)),
            )
        )
    return out


def bench_dimensions(rng):
    for model in _models(rng):
        for k in range(4):
            for R, _m in window(model, k):
                assert moduli_dim(model, R) == moduli_dim_oracle(model, R)


def bench_rank_bijection(rng):
    for model in _models(rng):
        for c in range(250):
            c_to_Rd(model, c)


def bench_invariants(rng):
    for model in _models(rng):
        for k in range(3):
            for R, _m in window(model, k):
                for d in range(sector_dim(model, R) + 1):
                    h_invariant(model, R, d)
                    h_prime_oracle(model, R, d)


def bench_localization(rng):
    Q = rationals.Rational
    for m in range(2, 7):
        for _ in range(150):
            lams = set()
            while len(lams) < m:
                lams.add(Q(rng.randint(-60, 60), rng.randint(1, 9)))
            for d in range(m):
                localization_sum(sorted(lams), d)


def bench_triangular_solve(rng):
    Q = rationals.Rational
    n = 60
    L = [
        [Q(rng.randint(-9, 9), rng.randint(1, 7)) if j < i else Q(0) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        L[i][i] = Q(rng.randint(1, 9), rng.randint(1, 7))
    for _ in range(10):
        x = [Q(rng.randint(-50, 50), rng.randint(1, 11)) for _ in range(n)]
        v = [sum((L[i][j] * x[j] for j in range(n)), Q(0)) for i in range(n)]
        assert solve_lower_triangular(L, v) == x


KERNELS = [
    ("dimension sweep", bench_dimensions),
    ("rank bijection", bench_rank_bijection),
    ("fiber invariants", bench_invariants),
    ("localization sums", bench_localization),
    ("triangular solve", bench_triangular_solve),
]


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    backends = rationals.available_backends()
    if len(backends) < 2:
        print(f"only one backend available ({backends}); timing it alone")
    previous = rationals.BACKEND
    results: dict[str, dict[str, float]] = {name: {} for name, _fn in KERNELS}
    try:
        for backend in backends:
            rationals.set_backend(backend)
            for name, fn in KERNELS:
                best = min(_timed(fn) for _ in range(repeats))
                results[name][backend] = best
    finally:
        rationals.set_backend(previous)

    width = max(len(name) for name, _ in KERNELS)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += "  speedup"
    print(header)
    for name, _fn in KERNELS:
        row = f"{name:<{width}}  " + "  ".join(
            f"{results[name][b]:>9.4f}s" for b in backends
        )
        if len(backends) == 2:
            fast, slow = sorted(results[name].values())
            row += f"  {slow / fast:>6.2f}x"
        print(row)


def _timed(fn):
    rng = random.Random(8128)
    start = time.perf_counter()
    fn(rng)
    return time.perf_counter() - start


if __name__ == "__main__":
    main()
