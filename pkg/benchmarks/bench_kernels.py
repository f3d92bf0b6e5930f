#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-Python phased-sum kernels.

The workload is the Gauss-sum sweep over all primitive characters mod 3^a
and 7^a at desk scale: the exponent tables are built once, then each backend
runs the same list of summations.
"""

import argparse
import time
from array import array

from localtype import kernels
from localtype.characters import primitive_chars


def build_workload(modulus_max=729):
    cases = []
    for p in (3, 7):
        a = 1
        while p**a <= modulus_max:
            m = p**a
            for chi in primitive_chars(p, a):
                order, table = chi.value_table()
                units = array("q", table)
                char_exps = array("q", [-num % order for num in table.values()])
                cases.append((char_exps, order, units, m))
            a += 1
    return cases


def time_backend(func, cases, repeat):
    best = float("inf")
    checksum = 0j
    for _ in range(repeat):
        start = time.perf_counter()
        acc = 0j
        for char_exps, order, units, m in cases:
            acc += func(char_exps, order, units, m)
        best = min(best, time.perf_counter() - start)
        checksum = acc
    return best, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--modulus-max", type=int, default=729)
    args = parser.parse_args()

    cases = build_workload(args.modulus_max)
    terms = sum(len(c[0]) for c in cases)
    print(f"workload: {len(cases)} Gauss sums, {terms} terms total")

    backends = [("python", kernels.phased_sum_python)]
    if kernels.phased_sum_compiled is not None:
        backends.append(("cython", kernels.phased_sum_compiled))
    else:
        print("compiled kernel not available; timing the pure backend only")

    results = {}
    for name, func in backends:
        best, checksum = time_backend(func, cases, args.repeat)
        results[name] = (best, checksum)
        print(f"{name:>7}: {best * 1e3:8.2f} ms  ({best / terms * 1e9:6.1f} ns/term)")

    if len(results) == 2:
        py, cy = results["python"][0], results["cython"][0]
        drift = abs(results["python"][1] - results["cython"][1])
        print(f"speedup: {py / cy:.1f}x (checksum drift {drift:.2e})")


if __name__ == "__main__":
    main()
