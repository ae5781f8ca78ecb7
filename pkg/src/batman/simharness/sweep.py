"""Parameter sweeps over run length and window size."""

import math
from collections import defaultdict
from functools import partial

import anyio
import msgspec

from batman.common.concurrency import process_items
from batman.config.validations import SimConfig
from batman.constants import DEFAULT_T_RANGE, DEFAULT_WINDOW_RANGE, METHODS
from batman.simharness.simulation import SweepRow, run_simulation


def _span(bounds: tuple[int, int, int]) -> tuple[int, ...]:
    lo, hi, step = bounds
    return tuple(range(lo, hi + 1, step))


class SweepPoint(msgspec.Struct, frozen=True):
    T: int
    window: int
    seed: int


class SweepGrid(msgspec.Struct, frozen=True):
    """Run lengths and window sizes to sweep. Each window ``w`` runs with s = N_e = w."""

    t_values: tuple[int, ...]
    windows: tuple[int, ...]
    seeds: int = 10
    base_seed: int = 0

    def __post_init__(self):
        if not self.t_values or not self.windows:
            raise ValueError("Sweep grid needs at least one T value and one window size")
        if self.seeds < 1:
            raise ValueError("Sweep grid needs at least one seed")
        if min(self.t_values) < 1 or min(self.windows) < 1:
            raise ValueError("T values and window sizes must be >= 1")

    @classmethod
    def default(cls, seeds: int = 10, base_seed: int = 0) -> "SweepGrid":
        return cls(_span(DEFAULT_T_RANGE), _span(DEFAULT_WINDOW_RANGE), seeds, base_seed)

    @classmethod
    def from_ranges(
        cls, t_range: tuple[int, int, int], window_range: tuple[int, int, int], seeds: int, base_seed: int = 0
    ) -> "SweepGrid":
        return cls(_span(t_range), _span(window_range), seeds, base_seed)

    def points(self) -> list[SweepPoint]:
        """Grid points ordered by T, then window, then seed."""
        return [
            SweepPoint(T=t, window=w, seed=self.base_seed + i)
            for t in self.t_values
            for w in self.windows
            for i in range(self.seeds)
        ]

    def row_count(self, n_nodes: int) -> int:
        return len(self.t_values) * len(self.windows) * self.seeds * n_nodes * len(METHODS)


def point_config(point: SweepPoint, base: SimConfig) -> SimConfig:
    fields = msgspec.structs.asdict(base)
    fields.update(ticks=point.T, s=point.window, n_e=point.window, seed=point.seed)
    return SimConfig(**fields)


def run_point(point: SweepPoint, base: SimConfig) -> list[SweepRow]:
    return run_simulation(point_config(point, base)).rows


class SweepTable(msgspec.Struct):
    rows: list[SweepRow]

    def aggregate(self) -> dict[tuple[str, int], float]:
        """Mean MAE per (method, window size) over T values, seeds and nodes. NaN rows are skipped."""
        buckets: defaultdict[tuple[str, int], list[float]] = defaultdict(list)
        for row in self.rows:
            if not math.isnan(row.mae):
                buckets[row.method, row.N_e].append(row.mae)
        return {key: math.fsum(values) / len(values) for key, values in sorted(buckets.items())}

    def filter(self, method: str | None = None, T: int | None = None, window: int | None = None) -> list[SweepRow]:
        return [
            row
            for row in self.rows
            if (method is None or row.method == method)
            and (T is None or row.T == T)
            and (window is None or row.N_e == window)
        ]


async def run_sweep_async(grid: SweepGrid, base: SimConfig, workers: int = 1) -> SweepTable:
    """Run every grid point on a worker pool. Rows come back in grid order whatever the scheduling."""
    results = await process_items(grid.points(), partial(run_point, base=base), "Sweeping", workers)
    return SweepTable(rows=[row for rows in results for row in rows])


def run_sweep(grid: SweepGrid, base: SimConfig, workers: int = 1) -> SweepTable:
    return anyio.run(run_sweep_async, grid, base, workers)
