"""Time the endomorphism search on the compiled and pure-Python kernels.

    python benchmarks/bench_search.py --cases pod:3 po:4 poi:5 --repeat 3
"""

from __future__ import annotations

import argparse
import time

from endolab.search import automorphisms, available_backends, enumerate_endomorphisms
from endolab.semigroup import enumerate_monoid
from endolab.transform import MonoidSpec

DEFAULT_CASES = ["od:4", "pod:3", "podi:5", "po:4", "poi:5", "i1one:4"]


def parse_case(text: str) -> tuple[str, int]:
    fam, _, n = text.partition(":")
    return fam, int(n)


def best_of(fn, repeat: int) -> tuple[float, int]:
    best, size = float("inf"), 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        size = len(fn())
        best = min(best, time.perf_counter() - t0)
    return best, size


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="+", default=DEFAULT_CASES, help="family:n pairs")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':<10}{'|S|':>6}{'found':>8}" + "".join(f"{b + ' s':>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for fam, n in map(parse_case, args.cases):
        S = enumerate_monoid(MonoidSpec(fam, n))
        # the I_1 monoids have too many endomorphisms to list; time Aut instead
        search = automorphisms if fam.startswith("i1") else enumerate_endomorphisms
        times = {}
        count = 0
        for b in backends:
            times[b], count = best_of(lambda: search(S, budget_seconds=None, backend=b), args.repeat)
        row = f"{fam + '_' + str(n):<10}{len(S):>6}{count:>8}" + "".join(f"{times[b]:>12.4f}" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
