"""Compare the compiled integer kernel against the pure-Python twin.

Runs the three hot kernels (Smith transforms, column echelon, coset
reduction) on identical seeded inputs through both implementations, checks
they return the same answers, and prints per-kernel timings.

    python3 benchmarks/bench_kernel.py [--sizes 6,10,16] [--repeat 30]
"""

import argparse
import random
import time

from bicohom import _core_py

try:
    from bicohom import _core_cy
except ImportError:
    _core_cy = None


def _random_matrix(rng, n, m, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)]


def _time(fn, inputs, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a in inputs:
            out = fn(a)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_kernel(name, make_inputs, call, sizes, repeat):
    print(name)
    for n in sizes:
        inputs = make_inputs(n)
        t_py, r_py = _time(lambda a: call(_core_py, a), inputs, repeat)
        if _core_cy is None:
            print("  n=%-3d pure %8.3f ms   (compiled kernel unavailable)"
                  % (n, 1e3 * t_py))
            continue
        t_cy, r_cy = _time(lambda a: call(_core_cy, a), inputs, repeat)
        assert r_py == r_cy, "backends disagree at n=%d" % n
        print("  n=%-3d pure %8.3f ms   compiled %8.3f ms   speedup %.2fx"
              % (n, 1e3 * t_py, 1e3 * t_cy, t_py / t_cy))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="6,10,16")
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(args.seed)

    square_batches = {n: [_random_matrix(rng, n, n) for _ in range(8)]
                      for n in sizes}
    bench_kernel("snf_transforms (u, d, v and inverses)",
                 lambda n: square_batches[n],
                 lambda mod, a: mod.snf_transforms(a),
                 sizes, args.repeat)
    bench_kernel("col_echelon (with transform)",
                 lambda n: square_batches[n],
                 lambda mod, a: mod.col_echelon(a),
                 sizes, args.repeat)

    def reduce_inputs(n):
        cases = []
        for a in square_batches[n]:
            h, _, pivots = _core_py.col_echelon(a, want_transform=False)
            vecs = [[rng.randint(-50, 50) for _ in range(n)]
                    for _ in range(20)]
            cases.append((h, pivots, vecs))
        return cases

    def reduce_call(mod, case):
        h, pivots, vecs = case
        return [mod.reduce_columns(h, pivots, v) for v in vecs]

    bench_kernel("reduce_columns (coset representatives)",
                 reduce_inputs, reduce_call, sizes, args.repeat)


if __name__ == "__main__":
    main()
