"""Timing harness for the delineation pipeline over random Bernoulli masks.

For each raster size and each probability on an even grid over [0, 1], a
batch of seeded random rasters is pushed through detection plus ring
formation and wall-clock timed. Generation happens outside the timed
section, each (size, p) gets one untimed warm-up run, and timed runs are
strictly sequential.

Because the pipeline cost tracks the number of detected vertices, the mean
time over p is expected to be bell-shaped with its peak near p = 0.5 and
the peak time to grow linearly with the pixel count; `check_shape` verifies
both properties on a set of records.
"""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass, field
from statistics import fmean, stdev
from typing import Callable

import numpy as np

from .raster import bernoulli
from .rings import form_rings
from .trace import detect

__all__ = ["ShapeReport", "TimingRecord", "check_shape", "run_experiment", "trial_seed"]


@dataclass(frozen=True)
class TimingRecord:
    size: int
    p: float
    trials: int
    mean_seconds: float
    stddev_seconds: float


@dataclass
class ShapeReport:
    """Outcome of `check_shape`: ok iff no series violated the expected shape."""

    ok: bool
    violations: list[str] = field(default_factory=list)
    peaks: dict[int, tuple[float, float]] = field(default_factory=dict)  # size -> (p, mean)


def trial_seed(seed: int, size: int, p_index: int, trial: int) -> int:
    """Derive a reproducible, well-mixed per-trial seed.

    Mixing goes through numpy's SeedSequence on the tuple (seed, size,
    p_index, trial); the p grid index is used rather than the float p so the
    derivation is exact.
    """
    ss = np.random.SeedSequence((seed, size, p_index, trial))
    return int(ss.generate_state(1, np.uint64)[0])


def run_experiment(
    sizes: list[int],
    p_steps: int = 11,
    trials: int = 10,
    seed: int = 0,
    progress: Callable[[TimingRecord], None] | None = None,
) -> list[TimingRecord]:
    """Time detect + form_rings over every (size, p) cell of the grid.

    p takes p_steps evenly spaced values from 0 to 1. Raster generation is
    excluded from the measured time. Identical seeds give identical
    workloads; only the timings vary run to run.
    """
    if any(s < 1 for s in sizes):
        raise ValueError(f"sizes must be >= 1, got {sizes}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if p_steps < 2:
        raise ValueError(f"p_steps must be >= 2, got {p_steps}")

    records: list[TimingRecord] = []
    for size in sizes:
        for p_index in range(p_steps):
            p = p_index / (p_steps - 1)
            warm = bernoulli(size, size, p, trial_seed(seed, size, p_index, trials))
            form_rings(detect(warm))
            times = []
            for trial in range(trials):
                raster = bernoulli(size, size, p, trial_seed(seed, size, p_index, trial))
                # GC stays off inside the window (as timeit does) so collector
                # pauses don't pollute the measurement; output is freed outside.
                gc_was_on = gc.isenabled()
                gc.disable()
                try:
                    start = time.perf_counter()
                    result = form_rings(detect(raster))
                    times.append(time.perf_counter() - start)
                finally:
                    if gc_was_on:
                        gc.enable()
                del result
            record = TimingRecord(
                size=size,
                p=p,
                trials=trials,
                mean_seconds=fmean(times),
                stddev_seconds=stdev(times) if trials > 1 else 0.0,
            )
            records.append(record)
            if progress is not None:
                progress(record)
    return records


def check_shape(records: list[TimingRecord]) -> ShapeReport:
    """Check timing records for the expected output-sensitive shape.

    Per size: the mean-time peak must fall at p in [0.3, 0.7] and the means
    at the grid endpoints (p=0 and p=1 on a full grid) must each stay below
    half the peak. Across sizes: peak times must scale with pixel count to
    within +/-50%. Requires at least 5 p values per size.
    """
    by_size: dict[int, dict[float, float]] = {}
    for r in records:
        by_size.setdefault(r.size, {})[r.p] = r.mean_seconds
    if not by_size:
        raise ValueError("no records to check")
    for size, series in by_size.items():
        if len(series) < 5:
            raise ValueError(f"size {size} has only {len(series)} p values, need >= 5")

    report = ShapeReport(ok=True)
    for size in sorted(by_size):
        series = by_size[size]
        peak_p = max(series, key=series.get)
        peak = series[peak_p]
        report.peaks[size] = (peak_p, peak)
        if not 0.3 <= peak_p <= 0.7:
            report.violations.append(
                f"size {size}: peak mean at p={peak_p}, outside [0.3, 0.7]"
            )
        for endpoint in (min(series), max(series)):
            if not series[endpoint] < 0.5 * peak:
                report.violations.append(
                    f"size {size}: mean at p={endpoint} is {series[endpoint]:.6g}, "
                    f"not below half the peak {peak:.6g}"
                )
    ordered = sorted(report.peaks)
    for i, small in enumerate(ordered):
        for big in ordered[i + 1 :]:
            expected = (big / small) ** 2
            peak_small = report.peaks[small][1]
            if peak_small <= 0:
                report.violations.append(f"size {small}: peak time is not positive")
                continue
            ratio = report.peaks[big][1] / peak_small
            if not 0.5 * expected <= ratio <= 1.5 * expected:
                report.violations.append(
                    f"sizes {small}->{big}: peak ratio {ratio:.3g} outside "
                    f"+/-50% of pixel ratio {expected:.3g}"
                )
    report.ok = not report.violations
    return report
