from batman.simharness.report import format_aggregate, rows_to_csv, trace_to_csv
from batman.simharness.simulation import (
    SimulationResult,
    SweepRow,
    draw_reliabilities,
    generate_streams,
    make_rngs,
    run_simulation,
    summarize,
)
from batman.simharness.sweep import SweepGrid, SweepPoint, SweepTable, run_point, run_sweep, run_sweep_async

__all__ = [
    "SimulationResult",
    "SweepGrid",
    "SweepPoint",
    "SweepRow",
    "SweepTable",
    "draw_reliabilities",
    "format_aggregate",
    "generate_streams",
    "make_rngs",
    "rows_to_csv",
    "run_point",
    "run_simulation",
    "run_sweep",
    "run_sweep_async",
    "summarize",
    "trace_to_csv",
]
