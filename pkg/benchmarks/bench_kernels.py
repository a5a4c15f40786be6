"""Time the genericity scan on the numba and numpy backends.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --cases A:5:5 A:6:4 --repeat 3

Each case is KIND:r:m with KIND in {A, W, EW}.  Both backends must agree on
verdict and subset count; the script exits non-zero if they do not.
"""

import argparse
import sys
import time

import numpy as np

from generic_erasure import _kernels
from generic_erasure.gensets import construct_A, construct_even_weight_set, construct_W
from generic_erasure.gf2 import candidate_vectors

DEFAULT_CASES = ["A:4:4", "A:5:3", "A:5:5", "W:6:3", "EW:6:4", "A:6:4"]


def build(case):
    kind, r, m = case.split(":")
    r, m = int(r), int(m)
    if kind == "A":
        A = construct_A(r, m)
    elif kind == "W":
        A = construct_W(r)
    else:
        A = construct_even_weight_set(r)
    return A, m


def time_backend(A, m, backend, repeat):
    cands = np.array(candidate_vectors(A.r), dtype=np.int64)
    masks = _kernels.parity_masks(list(A), A.r)
    hi = len(cands) - m + 1
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = _kernels.scan(cands, masks, m, 0, hi, backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="*", default=DEFAULT_CASES)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _kernels.HAVE_NUMBA:
        warm = construct_A(3, 3)
        time_backend(warm, 3, "numba", 1)  # compile outside the timed region

    print(f"{'case':<10}{'subsets':>12}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    ok = True
    for case in args.cases:
        A, m = build(case)
        t_np, res_np = time_backend(A, m, "numpy", args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb, res_nb = time_backend(A, m, "numba", args.repeat)
            ok &= res_nb == res_np
            print(f"{case:<10}{res_np[0]:>12}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.1f}")
        else:
            print(f"{case:<10}{res_np[0]:>12}{'-':>12}{t_np:>12.4f}{'-':>10}")
    if not ok:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
