"""Benchmark the compiled enumeration kernels against the pure-Python twins.

Run as: python bench/bench_kernels.py
"""

import time

from qtorb import _core_py, kernels
from qtorb.intlat import adjugate, det, mat_from_cols, transpose

DILATE_CASES = [
    ("segment order 12, k=40", [(1, 0), (1, 12)], 40),
    ("triangle order 3, k=12", [(1, 0, 0), (0, 1, 0), (-1, -1, 3)], 12),
    ("triangle order 60, k=6", [(1, 0, 0), (0, 1, 0), (-1, -1, 60)], 6),
]

BOX_CASES = [
    ("2 columns, order 199", [(1, 0), (1, 199)], 199),
    ("3 columns, order 60", [(1, 0, 0), (0, 1, 0), (-1, -1, 60)], 60),
    ("3 columns, order 120", [(1, 0, 0), (0, 1, 0), (-1, -1, 120)], 120),
]


def dilate_args(cols, k):
    verts = [tuple(c) for c in cols]
    n = len(verts[0])
    lo = [min(k * v[i] for v in verts) for i in range(n)]
    hi = [max(k * v[i] for v in verts) for i in range(n)]
    vmat = mat_from_cols(verts)
    gram = tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in verts) for row in verts
    )
    det_g = det(gram)
    return (
        lo,
        hi,
        [list(r) for r in transpose(vmat)],
        [list(r) for r in adjugate(gram)],
        det_g,
        k * det_g,
        [list(r) for r in vmat],
    )


def timed(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return result, best


def main():
    compiled = kernels.compiled_available()
    print(f"compiled kernels available: {compiled}")
    header = f"{'case':38} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for label, cols, k in DILATE_CASES:
        args = dilate_args(cols, k)
        pure_count, pure_t = timed(_core_py.count_in_dilate, *args)
        if compiled:
            from qtorb import _core

            fast_count, fast_t = timed(_core.count_in_dilate, *args)
            assert fast_count == pure_count
            print(
                f"dilate: {label:30} {pure_t*1e3:9.2f}ms {fast_t*1e3:9.2f}ms {pure_t/fast_t:7.1f}x"
            )
        else:
            print(f"dilate: {label:30} {pure_t*1e3:9.2f}ms {'-':>10} {'-':>8}")

    for label, cols, order in BOX_CASES:
        reduced = [[e % order for e in col] for col in cols]
        pure_sols, pure_t = timed(_core_py.box_solutions, reduced, order)
        if compiled:
            from qtorb import _core

            fast_sols, fast_t = timed(_core.box_solutions, reduced, order)
            assert sorted(fast_sols) == sorted(pure_sols)
            print(
                f"box:    {label:30} {pure_t*1e3:9.2f}ms {fast_t*1e3:9.2f}ms {pure_t/fast_t:7.1f}x"
            )
        else:
            print(f"box:    {label:30} {pure_t*1e3:9.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
