"""CSV output for sweep rows and per-tick traces. UTF-8, LF line endings, empty cell for NaN."""

import csv
import io
import math
from collections.abc import Iterable

from batman.constants import METHODS, SWEEP_CSV_COLUMNS, TRACE_CSV_COLUMNS
from batman.simharness.simulation import SimulationResult, SweepRow


def format_float(value: float) -> str:
    if math.isnan(value):
        return ""
    return repr(float(value))


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            (
                row.method,
                row.T,
                row.s,
                row.N_e,
                row.node,
                row.seed,
                format_float(row.true_p),
                format_float(row.final_estimate),
                format_float(row.mae),
                format_float(row.var),
            )
        )
    return buf.getvalue()


def trace_to_csv(result: SimulationResult) -> str:
    """One line per (tick, node), ticks starting at 1."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_CSV_COLUMNS)
    traces = result.traces
    for i in range(traces.shape[1]):
        for node, true_p in enumerate(result.reliabilities):
            estimates = (format_float(traces[m, i, node]) for m in range(len(METHODS)))
            writer.writerow((i + 1, node, format_float(true_p), *estimates))
    return buf.getvalue()


def format_aggregate(aggregate: dict[tuple[str, int], float]) -> list[str]:
    """Human readable ``method window mae`` lines."""
    return [f"{method:<4} window={window:<4} mae={mae:.4f}" for (method, window), mae in aggregate.items()]
