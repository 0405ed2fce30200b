"""Compare the pure-Python and compiled product kernels.

Times truncated-series products at a few sizes and prints a table with the
speedup of the compiled kernel over the fallback.  Both backends are checked
against each other for exact agreement on every workload first.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction

from goodbrackets import TruncSeries
from goodbrackets import _kernel


def rand_series(rng, k, n, terms):
    coeffs = {}
    for _ in range(terms):
        length = rng.randint(0, n)
        w = tuple(rng.randrange(k + 1) for _ in range(length))
        coeffs[w] = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    return TruncSeries(k, n, {w: c for w, c in coeffs.items() if c})


WORKLOADS = [
    # label, letters, degree, terms per factor, products per round
    ("small dense", 1, 6, 40, 60),
    ("two letters", 2, 5, 80, 40),
    ("wide alphabet", 4, 4, 120, 30),
    ("deep truncation", 2, 8, 150, 10),
]


def build_pairs(seed):
    rng = random.Random(seed)
    pairs = {}
    for label, k, n, terms, rounds in WORKLOADS:
        pairs[label] = [
            (rand_series(rng, k, n, terms), rand_series(rng, k, n, terms))
            for _ in range(rounds)
        ]
    return pairs


def time_backend(name, pairs):
    prev = _kernel.set_backend(name)
    try:
        out = {}
        for label, _, _, _, _ in WORKLOADS:
            start = time.perf_counter()
            results = [x * y for x, y in pairs[label]]
            out[label] = (time.perf_counter() - start, results)
        return out
    finally:
        _kernel.set_backend(prev)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing rounds per backend (best is kept)")
    parser.add_argument("--seed", type=int, default=13)
    args = parser.parse_args()

    backends = _kernel.available_backends()
    print("available backends: %s (active: %s)"
          % (", ".join(backends), _kernel.backend_name))
    if "compiled" not in backends:
        print("compiled kernel not built; timing the fallback only")

    pairs = build_pairs(args.seed)
    best = {b: {} for b in backends}
    results = {}
    for b in backends:
        for _ in range(args.repeat):
            timed = time_backend(b, pairs)
            for label, (dt, res) in timed.items():
                if label not in best[b] or dt < best[b][label]:
                    best[b][label] = dt
                results.setdefault(label, res)
                assert res == results[label], "backends disagree on %s" % label

    width = max(len(label) for label, *_ in WORKLOADS)
    header = "%-*s" % (width, "workload")
    for b in backends:
        header += "  %12s" % b
    if "pure" in backends and "compiled" in backends:
        header += "  %8s" % "speedup"
    print(header)
    for label, *_ in WORKLOADS:
        line = "%-*s" % (width, label)
        for b in backends:
            line += "  %10.1fms" % (best[b][label] * 1e3)
        if "pure" in backends and "compiled" in backends:
            line += "  %7.1fx" % (best["pure"][label] / best["compiled"][label])
        print(line)


if __name__ == "__main__":
    main()
