import math

import pytest

from batman.config.validations import SimConfig
from batman.simharness import SweepGrid, SweepPoint, SweepTable, run_sweep
from batman.simharness.simulation import SweepRow
from batman.simharness.sweep import point_config

BASE = SimConfig(n_nodes=10, mu=0.5, sigma=0.2, p_arrival=1.0, engine="vectorized")


def test_default_grid_matches_parameter_table() -> None:
    grid = SweepGrid.default(seeds=10)

    assert grid.t_values == tuple(range(500, 5001, 500))
    assert grid.windows == tuple(range(100, 301, 25))
    assert grid.row_count(10) == 10 * 9 * 10 * 10 * 4


def test_points_are_ordered_by_t_window_seed() -> None:
    grid = SweepGrid((100, 200), (10, 20), seeds=2, base_seed=5)

    assert grid.points()[:3] == [SweepPoint(100, 10, 5), SweepPoint(100, 10, 6), SweepPoint(100, 20, 5)]
    assert grid.points()[-1] == SweepPoint(200, 20, 6)


def test_grid_validation() -> None:
    with pytest.raises(ValueError):
        SweepGrid((), (10,))
    with pytest.raises(ValueError):
        SweepGrid((100,), (0,))
    with pytest.raises(ValueError):
        SweepGrid((100,), (10,), seeds=0)


def test_point_config_pairs_windows() -> None:
    config = point_config(SweepPoint(T=700, window=125, seed=3), BASE)

    assert (config.ticks, config.s, config.n_e, config.seed) == (700, 125, 125, 3)
    assert config.n_nodes == BASE.n_nodes


def test_single_point_gives_nodes_times_seeds_rows_per_method() -> None:
    base = SimConfig(n_nodes=4, engine="vectorized")

    table = run_sweep(SweepGrid((200,), (50,), seeds=3), base)

    assert len(table.rows) == 4 * 3 * 4
    for method in ("ml", "mlt", "mle", "mlm"):
        rows = table.filter(method=method)
        assert len(rows) == 12
        assert {row.seed for row in rows} == {0, 1, 2}
        assert all(row.s == row.N_e == 50 and row.T == 200 for row in rows)


def test_worker_count_does_not_change_rows() -> None:
    grid = SweepGrid((300, 600), (50, 75), seeds=2)
    base = SimConfig(n_nodes=3, engine="vectorized")

    assert run_sweep(grid, base, workers=1).rows == run_sweep(grid, base, workers=3).rows


def _row(method: str, window: int, mae: float) -> SweepRow:
    return SweepRow(method, 100, window, window, 0, 0, 0.5, 0.5, mae, 0.0)


def test_aggregate_averages_and_skips_undefined() -> None:
    table = SweepTable([_row("mle", 100, 0.1), _row("mle", 100, 0.3), _row("mle", 150, math.nan), _row("ml", 150, 0.2)])

    assert table.aggregate() == pytest.approx({("ml", 150): 0.2, ("mle", 100): 0.2})


def test_event_window_errors_shrink_with_window() -> None:
    table = run_sweep(SweepGrid((3000,), (100, 150), seeds=30), BASE, workers=4)
    aggregate = table.aggregate()

    assert 0.030 <= aggregate["mle", 100] <= 0.065
    assert 0.020 <= aggregate["mle", 150] <= 0.050
    assert aggregate["mle", 150] < aggregate["mle", 100]


def test_running_mean_error_shrinks_with_run_length() -> None:
    table = run_sweep(SweepGrid((500, 5000), (150,), seeds=10), BASE)

    def mean_mae(T: int) -> float:
        rows = table.filter(method="mlm", T=T)
        return sum(row.mae for row in rows) / len(rows)

    assert mean_mae(5000) <= mean_mae(500)
