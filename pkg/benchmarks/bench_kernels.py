"""Compare the compiled and pure-Python kernels on Groebner workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload computes a reduced Groebner basis of a ladder pfaffian ideal
with both backends, checks that the bases are identical, and reports the
best wall-clock time of ``--repeat`` runs.
"""

import argparse
import time

from pfladder import kernels
from pfladder.ideal import generators, groebner
from pfladder.ladder import LadderSpec
from pfladder.polyring import GF, QQ

WORKLOADS = [
    ("full 7x7, 4-pfaffians", LadderSpec(7, [(1, 7)], [2]), QQ),
    ("full 8x8, 4-pfaffians", LadderSpec(8, [(1, 8)], [2]), QQ),
    ("full 8x8, 4-pfaffians mod p", LadderSpec(8, [(1, 8)], [2]), GF()),
    ("full 8x8, 6-pfaffians", LadderSpec(8, [(1, 8)], [3]), QQ),
    ("two corners, n=9", LadderSpec(9, [(1, 7), (3, 9)], [2, 2]), QQ),
]


def best_time(spec, field, backend, repeat):
    best = float("inf")
    basis = None
    with kernels.use(backend):
        for _ in range(repeat):
            start = time.perf_counter()
            gb = groebner(generators(spec, field=field))
            best = min(best, time.perf_counter() - start)
            basis = [str(g) for g in gb.polys]
    return best, basis


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if "compiled" not in kernels.BACKENDS:
        print("compiled kernels are not built; only the pure-Python backend is available")
        return 1
    print(f"{'workload':32} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, spec, field in WORKLOADS:
        t_py, b_py = best_time(spec, field, "python", args.repeat)
        t_c, b_c = best_time(spec, field, "compiled", args.repeat)
        if b_py != b_c:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:32} {t_py:10.3f} {t_c:11.3f} {t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
