"""Per-pair timing of distance functions across input sizes.

Workloads are seeded random strings, so repeated runs time identical
inputs. Each (function, size) cell gets one untimed warm-up call followed
by at least 30 timed repetitions with garbage collection disabled; the
report carries per-cell mean and standard deviation plus the ratio of
means between consecutive sizes. When sizes double, that ratio is the
empirical growth probe: roughly 2 for linear work and 4 for quadratic.

Timing loops are strictly single-threaded; run nothing else heavy while
benchmarking.
"""

from __future__ import annotations

import gc
import random
import statistics
import string
from dataclasses import dataclass
from time import perf_counter_ns
from typing import Callable, Sequence

from .distance import DistanceSpec, mfkc_distance
from .evaluate import DistanceFn, builtin_distances
from .hashing import max_k_freq_hash

__all__ = [
    "BenchReport",
    "BenchRow",
    "MIN_REPS",
    "RatioEntry",
    "bench_suite",
    "gen_workload",
    "time_distance",
    "time_mfkc_prehashed",
]

MIN_REPS = 30

_WORKLOAD_ALPHABET = string.ascii_lowercase + string.ascii_uppercase + string.digits


def gen_workload(n: int, alphabet_size: int = 26, seed: int = 0) -> tuple[str, str]:
    """Two uniform random strings of length ``n``, deterministic in seed."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 2 <= alphabet_size <= len(_WORKLOAD_ALPHABET):
        raise ValueError(
            f"alphabet_size must be in 2..{len(_WORKLOAD_ALPHABET)}, got {alphabet_size}"
        )
    rng = random.Random(seed)
    alphabet = _WORKLOAD_ALPHABET[:alphabet_size]
    first = "".join(rng.choices(alphabet, k=n))
    second = "".join(rng.choices(alphabet, k=n))
    return first, second


@dataclass(frozen=True, slots=True)
class BenchRow:
    function: str
    n: int
    reps: int
    mean_ns: float
    stddev_ns: float


@dataclass(frozen=True, slots=True)
class RatioEntry:
    """Ratio of mean times between consecutive measured sizes of one function."""

    function: str
    from_n: int
    to_n: int
    ratio: float


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    doubling_ratios: tuple[RatioEntry, ...]

    def mean_ns(self, function: str, n: int) -> float:
        for row in self.rows:
            if row.function == function and row.n == n:
                return row.mean_ns
        raise KeyError(f"no row for {function!r} at n={n}")

    def ratio(self, function: str, to_n: int) -> float:
        for entry in self.doubling_ratios:
            if entry.function == function and entry.to_n == to_n:
                return entry.ratio
        raise KeyError(f"no ratio for {function!r} ending at n={to_n}")

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "function": r.function,
                    "n": r.n,
                    "reps": r.reps,
                    "mean_ns": r.mean_ns,
                    "stddev_ns": r.stddev_ns,
                }
                for r in self.rows
            ],
            "doubling_ratios": [
                {
                    "function": e.function,
                    "from_n": e.from_n,
                    "to_n": e.to_n,
                    "ratio": e.ratio,
                }
                for e in self.doubling_ratios
            ],
        }

    def to_tsv(self) -> str:
        lines = ["function\tn\treps\tmean_ns\tstddev_ns"]
        for r in self.rows:
            lines.append(f"{r.function}\t{r.n}\t{r.reps}\t{r.mean_ns:.6g}\t{r.stddev_ns:.6g}")
        return "\n".join(lines) + "\n"


def _validate(sizes: Sequence[int], reps: int) -> None:
    if not sizes:
        raise ValueError("sizes must be non-empty")
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be ascending, got {list(sizes)}")
    if reps < MIN_REPS:
        raise ValueError(f"reps must be >= {MIN_REPS}, got {reps}")


def _time_cell(thunk: Callable[[], object], reps: int) -> tuple[float, float]:
    thunk()  # warm-up, excluded from statistics
    samples = []
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(reps):
            started = perf_counter_ns()
            thunk()
            samples.append(perf_counter_ns() - started)
    finally:
        if was_enabled:
            gc.enable()
    return statistics.fmean(samples), statistics.stdev(samples)


def _bench_function(
    name: str,
    make_thunk: Callable[[str, str], Callable[[], object]],
    sizes: Sequence[int],
    reps: int,
    seed: int,
    alphabet_size: int,
) -> tuple[list[BenchRow], list[RatioEntry]]:
    rows: list[BenchRow] = []
    for n in sizes:
        first, second = gen_workload(n, alphabet_size, seed)
        mean, stddev = _time_cell(make_thunk(first, second), reps)
        rows.append(BenchRow(function=name, n=n, reps=reps, mean_ns=mean, stddev_ns=stddev))
    ratios = [
        RatioEntry(function=name, from_n=a.n, to_n=b.n, ratio=b.mean_ns / a.mean_ns)
        for a, b in zip(rows, rows[1:])
        if a.mean_ns > 0
    ]
    return rows, ratios


def time_distance(
    d: DistanceFn,
    sizes: Sequence[int],
    reps: int = 50,
    seed: int = 0,
    alphabet_size: int = 26,
) -> BenchReport:
    """Time one distance function over seeded workloads of the given sizes."""
    _validate(sizes, reps)
    rows, ratios = _bench_function(
        d.name, lambda a, b: lambda: d.fn(a, b), sizes, reps, seed, alphabet_size
    )
    return BenchReport(rows=tuple(rows), doubling_ratios=tuple(ratios))


def time_mfkc_prehashed(
    sizes: Sequence[int],
    reps: int = 50,
    seed: int = 0,
    spec: DistanceSpec | None = None,
    alphabet_size: int = 26,
) -> BenchReport:
    """Time the digest comparison alone, with hashing done outside the timed region."""
    _validate(sizes, reps)
    spec = spec or DistanceSpec()

    def make_thunk(a: str, b: str) -> Callable[[], object]:
        h1 = max_k_freq_hash(a, spec.k, spec.unit)
        h2 = max_k_freq_hash(b, spec.k, spec.unit)
        return lambda: mfkc_distance(h1, h2, spec)

    rows, ratios = _bench_function(
        "mfkc-prehashed", make_thunk, sizes, reps, seed, alphabet_size
    )
    return BenchReport(rows=tuple(rows), doubling_ratios=tuple(ratios))


def bench_suite(
    names: Sequence[str],
    sizes: Sequence[int],
    reps: int = 50,
    seed: int = 0,
    spec: DistanceSpec | None = None,
    alphabet_size: int = 26,
) -> BenchReport:
    """Benchmark several functions over the same seeded workloads.

    ``names`` may be any of the builtin distances plus "mfkc-prehashed".
    """
    _validate(sizes, reps)
    spec = spec or DistanceSpec()
    known = builtin_distances(spec)
    rows: list[BenchRow] = []
    ratios: list[RatioEntry] = []
    for name in names:
        if name == "mfkc-prehashed":
            report = time_mfkc_prehashed(sizes, reps, seed, spec, alphabet_size)
        elif name in known:
            report = time_distance(known[name], sizes, reps, seed, alphabet_size)
        else:
            raise ValueError(f"unknown benchmark function {name!r}")
        rows.extend(report.rows)
        ratios.extend(report.doubling_ratios)
    return BenchReport(rows=tuple(rows), doubling_ratios=tuple(ratios))
