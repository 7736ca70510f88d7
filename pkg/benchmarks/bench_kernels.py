"""Time the numba kernels against the pure-Python fallback on the same searches."""

from __future__ import annotations

import argparse
import statistics
import time

from cayleycore import ConnectionSet, FieldSpec, materialize
from cayleycore.homcore import has_proper_coloring, is_core
from cayleycore.verify.fixtures import counterexample, halved_cube_set, sharpness_set

# 32-vertex Cayley graph with clique number 10 and chromatic number 16
DENSE_F2_5 = (1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 18, 19, 20, 22, 23, 24, 25, 27, 29, 30, 31)


def workloads():
    folded = materialize(sharpness_set())
    halved = materialize(halved_cube_set(5))
    ternary = materialize(counterexample(3).connection_set())
    dense = materialize(ConnectionSet(FieldSpec(2, 5), frozenset(DENSE_F2_5)))
    return [
        ("is_core folded 5-cube", lambda b: is_core(folded, backend=b), True),
        ("is_core halved 5-cube", lambda b: is_core(halved, backend=b), True),
        ("no 6-colouring of ternary X_*", lambda b: has_proper_coloring(ternary, 6, backend=b), False),
        ("no 15-colouring of dense F_2^5 graph", lambda b: has_proper_coloring(dense, 15, backend=b), False),
    ]


def timed(fn, backend: str, repeat: int) -> tuple[float, object]:
    out = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(backend)
        out.append(time.perf_counter() - t0)
    return statistics.median(out), result


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-python", action="store_true", help="time the numba kernels only")
    args = parser.parse_args(argv)

    jobs = workloads()
    for _, fn, _ in jobs:  # compile once outside the timings
        fn("numba")
    print(f"{'workload':40s} {'numba s':>9s} {'python s':>9s} {'speedup':>8s}")
    for name, fn, expect in jobs:
        tn, rn = timed(fn, "numba", args.repeat)
        assert rn == expect, name
        if args.skip_python:
            print(f"{name:40s} {tn:9.4f}")
            continue
        tp, rp = timed(fn, "python", args.repeat)
        assert rp == expect, name
        print(f"{name:40s} {tn:9.4f} {tp:9.4f} {tp / tn:7.1f}x")


if __name__ == "__main__":
    main()
