"""Wall-clock scaling harness: fast backend vs the quadratic congruence baseline.

The fast backend is the per-cell prefix-sum algorithm (time Theta(k^3 m n) per
word).  The congruence baseline forms the signature matrix as A C A^T with the
full (mn)^2-entry axis core, so its cost is quadratic in the number of grid
cells; on integer grids the baseline streams core blocks through numpy int64
matmuls (exact, overflow-guarded) instead of materializing the core, which
keeps the memory footprint linear while leaving the Theta((mn)^2) work intact.

Timings use the monotonic clock; callers take medians over repeats.  CSV rows
are (method, m, n, nanos).
"""

from __future__ import annotations

import gc
import math
import random
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .fastsig import sig_matrix_fast, sig_tensor_fast
from .linalg import Matrix
from .membranes import GridData, PiecewiseBilinearMembrane, sig_via_congruence
from .rational import rat


def random_integer_grid(
    d: int, m: int, n: int, rng: random.Random, bound: int = 9
) -> GridData:
    vals = tuple(
        tuple(
            tuple(rat(rng.randint(-bound, bound)) for _ in range(n + 1))
            for _ in range(m + 1)
        )
        for _ in range(d)
    )
    return GridData(d, m, n, vals)


def _integer_grid_array(grid: GridData) -> np.ndarray | None:
    flat = []
    for comp in grid.values:
        for row in comp:
            for x in row:
                if x.denominator != 1:
                    return None
                flat.append(int(x))
    return np.array(flat, dtype=object).reshape(grid.d, grid.m + 1, grid.n + 1)


def congruence_matrix_quadratic(grid: GridData, block_elems: int = 2_000_000) -> Matrix:
    """Exact signature matrix via the explicit (mn)^2 core congruence.

    Streams column blocks of 4 * C_axis (integer entries in {0, 1, 2, 4})
    generated from the index comparisons, multiplies them into A, and divides
    by 4 at the end.  Falls back to the dense rational route for non-integer
    grids or when int64 bounds could overflow.
    """
    v = _integer_grid_array(grid)
    if v is None:
        return sig_via_congruence(PiecewiseBilinearMembrane(grid), 2).to_matrix()
    d, m, n = grid.d, grid.m, grid.n
    big = m * n
    a = (v[:, 1:, 1:] - v[:, :-1, 1:] - v[:, 1:, :-1] + v[:, :-1, :-1]).reshape(d, big)
    amax = int(np.max(np.abs(a))) if big else 0
    # |W| <= mn * 4 * amax, |S4| <= mn * |W| * amax; keep both inside int64
    safe = amax == 0 or big * 4 * amax * big * amax < 2**62
    dtype = np.int64 if safe else object
    a = a.astype(dtype)
    i_idx = (np.arange(big) // n).astype(np.int64)
    j_idx = (np.arange(big) % n).astype(np.int64)
    w = np.zeros((d, big), dtype=dtype)
    width = max(1, min(big, block_elems // max(big, 1)))
    for c0 in range(0, big, width):
        c1 = min(c0 + width, big)
        ik, jl = i_idx[c0:c1], j_idx[c0:c1]
        ci = 2 * (i_idx[:, None] < ik[None, :]) + (i_idx[:, None] == ik[None, :])
        cj = 2 * (j_idx[:, None] < jl[None, :]) + (j_idx[:, None] == jl[None, :])
        block = (ci * cj).astype(dtype)
        w[:, c0:c1] = a @ block
    s4 = w @ a.T
    return Matrix(d, d, tuple(rat(int(s4[i, j]), 4) for i in range(d) for j in range(d)))


@dataclass(frozen=True)
class BenchRow:
    method: str
    m: int
    n: int
    nanos: int


@dataclass(frozen=True)
class BenchResult:
    rows: tuple
    fast_exponent: float | None
    doubling_ratios: dict

    def csv_lines(self) -> list[str]:
        lines = ["method,m,n,nanos"]
        lines += [f"{r.method},{r.m},{r.n},{r.nanos}" for r in self.rows]
        if self.fast_exponent is not None:
            lines.append(f"# fast scaling exponent in m*n: {self.fast_exponent:.3f}")
        for method, ratio in sorted(self.doubling_ratios.items()):
            lines.append(f"# {method} doubling time ratio: {ratio:.2f}")
        return lines


def _time_ns(fn) -> int:
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter_ns()
        fn()
        return time.perf_counter_ns() - t0
    finally:
        if gc_was_enabled:
            gc.enable()
        gc.collect()


def fit_exponent(points: list[tuple[int, int]]) -> float | None:
    """Least-squares slope of log(nanos) against log(m*n)."""
    pts = [(math.log(s), math.log(t)) for s, t in points if s > 0 and t > 0]
    if len({x for x, _ in pts}) < 2:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    num = sum((x - mx) * (y - my) for x, y in pts)
    den = sum((x - mx) ** 2 for x, _ in pts)
    return num / den


def run_bench(
    sizes: list[tuple[int, int]],
    d: int = 2,
    level: int = 2,
    repeats: int = 3,
    methods: tuple[str, ...] = ("fast", "congruence"),
    seed: int | None = None,
    check_agreement: bool = False,
) -> BenchResult:
    """Median-of-repeats timings per size and method, plus the fast-method fit.

    ``doubling_ratios`` maps each method to median(t at size) / median(t at
    the previous size) for consecutive size pairs where m*n quadruples (i.e.
    both orders double); only the largest such pair is reported.
    """
    rng = random.Random(seed)
    rows: list[BenchRow] = []
    medians: dict[tuple[str, tuple[int, int]], int] = {}
    for m, n in sizes:
        grid = random_integer_grid(d, m, n, rng)
        for method in methods:
            if method == "fast":
                fn = lambda: sig_tensor_fast(grid, level)
            elif method == "congruence":
                if level != 2:
                    raise ValueError("the congruence baseline benchmarks level 2 only")
                fn = lambda: congruence_matrix_quadratic(grid)
            else:
                raise ValueError(f"unknown method {method!r}")
            times = [_time_ns(fn) for _ in range(repeats)]
            med = int(statistics.median(times))
            rows.append(BenchRow(method, m, n, med))
            medians[(method, (m, n))] = med
        if check_agreement and level == 2 and "congruence" in methods:
            if sig_matrix_fast(grid) != congruence_matrix_quadratic(grid):
                raise AssertionError(f"backends disagree on grid {m}x{n}")
    fast_points = [
        (m * n, medians[("fast", (m, n))]) for m, n in sizes if ("fast", (m, n)) in medians
    ]
    exponent = fit_exponent(fast_points) if len(fast_points) >= 2 else None
    ratios: dict[str, float] = {}
    for method in methods:
        pairs = [
            (small, big)
            for small in sizes
            for big in sizes
            if (big[0], big[1]) == (2 * small[0], 2 * small[1])
            and (method, small) in medians
            and (method, big) in medians
        ]
        if pairs:
            small, big = pairs[-1]
            ratios[method] = medians[(method, big)] / medians[(method, small)]
    return BenchResult(tuple(rows), exponent, ratios)
