"""Benchmark the compiled kernel backend against the pure-Python fallback.

Runs the hot kernels on representative workloads and prints a table of
timings plus speedups.  Usage:

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

from ffperm import _kernels
from ffperm.field import make_field
from ffperm.translators import trace_affine_table


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_build(backend, repeat):
    # field construction is dominated by the exp/log table recurrence
    field = make_field(2, 12)
    mod = list(field.modulus)
    g_digits = list(field.generator.coeffs)

    def run():
        _kernels.get_backend(backend).build_exp(2, 12, mod, g_digits)
    return timeit(run, repeat)


def bench_translator_scan(backend, repeat):
    field = make_field(2, 10, backend=backend)
    f = trace_affine_table(field, 2, field.generator)
    subs = [int(i) for i in field.subfield_view(2).element_indices if i]
    return timeit(lambda: field.kern.translator_scan(np.asarray(f.values), subs), repeat)


def bench_binomial_sweep(backend, repeat):
    field = make_field(3, 4, backend=backend)
    return timeit(lambda: field.kern.binomial_sweep(2), repeat)


def bench_balanced_all(backend, repeat):
    field = make_field(3, 4, backend=backend)
    rng = np.random.default_rng(0)
    vals = rng.permutation(field.q)
    t1 = field.trace_int_table()
    return timeit(lambda: field.kern.balanced_all(vals, t1), repeat)


def bench_vec_add(backend, repeat):
    field = make_field(3, 6, backend=backend)
    rng = np.random.default_rng(1)
    a = rng.integers(0, field.q, size=200_000)
    b = rng.integers(0, field.q, size=200_000)
    return timeit(lambda: field.kern.add(a, b), repeat)


BENCHES = [
    ("exp/log build GF(2^12)", bench_build),
    ("translator scan GF(2^10)", bench_translator_scan),
    ("binomial sweep GF(3^4)", bench_binomial_sweep),
    ("balancedness sweep GF(3^4)", bench_balanced_all),
    ("vector add 200k GF(3^6)", bench_vec_add),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    have_c = _kernels.core_c is not None
    if not have_c:
        print("compiled backend not built; timing the pure-Python fallback only")
    header = f"{'kernel':<28}{'py':>10}" + (f"{'c':>10}{'speedup':>10}" if have_c else "")
    print(header)
    print("-" * len(header))
    for name, bench in BENCHES:
        t_py = bench("py", args.repeat)
        line = f"{name:<28}{t_py * 1e3:>8.1f}ms"
        if have_c:
            t_c = bench("c", args.repeat)
            line += f"{t_c * 1e3:>8.1f}ms{t_py / t_c:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
