"""Compare the compiled and numpy elimination kernels.

    python benchmarks/bench_rank.py [--sizes 100 200 400] [--repeat 3]

Dense random matrices exercise the kernels directly; the mu_s rows use real
multiplication matrices with and without singleton-column peeling.
"""

import argparse
import time

import numpy as np

from asnormal.curve import pure_power_curve
from asnormal.gf import make_field
from asnormal.linalg import BACKENDS, GfMatrix, rank
from asnormal.normality import make_embedding, mu_matrix


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = sorted(BACKENDS)
    print(f"{'case':44s} " + " ".join(f"{b:>12s}" for b in backends))
    rng = np.random.default_rng(0)
    cases = []
    for F in (make_field(31), make_field(2, 4)):
        for n in args.sizes:
            data = rng.integers(0, F.q, (n, n + n // 2))
            cases.append((f"dense GF({F.q}) {n}x{n + n // 2}", GfMatrix(F, data), False))
    for (p, k), m, s, t in [((31, 1), 2, 4, None), ((2, 4), 15, 8, None), ((13, 1), 3, 2, 2)]:
        curve = pure_power_curve(make_field(p, k), m)
        emb = make_embedding(curve, "CASE1" if t is None else "CASE2", t)
        M = mu_matrix(emb, s)
        label = f"mu_{s} q={curve.q} m={m} {M.rows}x{M.cols}"
        cases.append((label + " no-peel", M, False))
        cases.append((label + " peel", M, True))
    for label, M, peel in cases:
        times, ranks = [], set()
        for b in backends:
            dt, rk = best_of(lambda: rank(M, b, peel=peel), args.repeat)
            times.append(dt)
            ranks.add(rk)
        assert len(ranks) == 1, (label, ranks)
        print(f"{label:44s} " + " ".join(f"{dt * 1e3:10.2f}ms" for dt in times))


if __name__ == "__main__":
    main()
