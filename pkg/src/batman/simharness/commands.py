import time
from collections.abc import Callable
from pathlib import Path
from typing import Any

import asyncclick as click
import msgspec
from humanfriendly import format_timespan

from batman.common import commandgroup, parse_csv_ints
from batman.common.options import out_option, resolve_out, resolve_seed, seed_option, write_output
from batman.config.validations import SimConfig, SimOverrides
from batman.simharness.report import format_aggregate, rows_to_csv, trace_to_csv
from batman.simharness.simulation import run_simulation
from batman.simharness.sweep import SweepGrid, run_sweep_async


def _load_params(path: str | None, base: SimConfig) -> SimConfig:
    if not path:
        return base
    try:
        overrides = msgspec.toml.decode(Path(path).read_bytes(), type=SimOverrides)
        return base.with_overrides(overrides)
    except (msgspec.ValidationError, msgspec.DecodeError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--params") from e


def _build_config(ctx: click.Context, params: str | None, **flags: Any) -> SimConfig:
    """Config values, then the --params file, then command line flags."""
    from batman import cfg

    base = _load_params(params, cfg.simulation)
    fields = msgspec.structs.asdict(base)
    fields.update({name: value for name, value in flags.items() if value is not None})
    fields["seed"] = resolve_seed(ctx, flags.get("seed"), base.seed)
    try:
        return SimConfig(**fields)
    except ValueError as e:
        raise click.UsageError(str(e), ctx) from e


def simulation_options(func: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option("--nodes", "n_nodes", type=click.IntRange(min=1), default=None, help="Number of nodes."),
        click.option("--mu", type=click.FloatRange(0.0, 1.0), default=None, help="Mean reliability."),
        click.option("--sigma", type=click.FloatRange(min=0.0), default=None, help="Reliability std deviation."),
        click.option(
            "--p-arrival",
            type=click.FloatRange(0.0, 1.0),
            default=None,
            help="Probability a node emits an event at a tick.",
        ),
        click.option("--burn-in", type=click.IntRange(min=0), default=None, help="Ticks excluded from errors."),
        click.option("--engine", type=click.Choice(["contract", "vectorized"]), default=None),
        click.option(
            "--params",
            type=click.Path(exists=True, dir_okay=False),
            default=None,
            help="Flat key = value parameter file.",
        ),
        seed_option,
        out_option,
    ]
    for option in reversed(options):
        func = option(func)
    return func


@commandgroup.command()
@click.option("--T", "ticks", type=click.IntRange(min=1), default=None, help="Number of ticks.")
@click.option("--s", "s", type=click.IntRange(min=1), default=None, help="MLT time window in ticks.")
@click.option("--N_e", "--n-e", "n_e", type=click.IntRange(min=1), default=None, help="MLE event window.")
@click.option(
    "--p",
    "fixed_p",
    type=click.FloatRange(0.0, 1.0),
    multiple=True,
    help="Fixed reliability per node instead of Gaussian draws (repeat once per node).",
)
@click.option("--summary", is_flag=True, help="Emit per-node error rows instead of the per-tick trace.")
@simulation_options
@click.pass_context
async def simulate(
    ctx: click.Context,
    fixed_p: tuple[float, ...],
    summary: bool,
    params: str | None,
    out: str | None,
    **flags: Any,
) -> None:
    """Simulate event streams and trace the ML, MLT, MLE and MLM estimates."""
    if fixed_p and flags.get("n_nodes") is None:
        flags["n_nodes"] = len(fixed_p)
    config = _build_config(ctx, params, **flags)
    if fixed_p and len(fixed_p) != config.n_nodes:
        raise click.BadParameter(f"got {len(fixed_p)} values for {config.n_nodes} nodes", param_hint="--p")

    started = time.monotonic()
    result = run_simulation(config, fixed_p or None)
    write_output(rows_to_csv(result.rows) if summary else trace_to_csv(result), resolve_out(ctx, out))
    click.secho(
        f"Simulated {config.n_nodes} nodes over {config.ticks} ticks (seed {config.seed}) "
        f"in {format_timespan(time.monotonic() - started)}",
        fg="green",
        err=True,
    )


def _parse_list(ctx: click.Context, param: click.Parameter, value: str | None) -> list[int] | None:
    if value is None:
        return None
    try:
        values = parse_csv_ints(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e
    if not values or min(values) < 1:
        raise click.BadParameter("values must be positive integers")
    return values


@commandgroup.command()
@click.option("--grid-default", is_flag=True, help="Sweep the full T and window grid (500..5000, 100..300).")
@click.option(
    "--T-values", "t_values", callback=_parse_list, default=None, help="T values as a,b,c or min:max:step."
)
@click.option(
    "--windows", callback=_parse_list, default=None, help="Window sizes (s = N_e) as a,b,c or min:max:step."
)
@click.option("--seeds", type=click.IntRange(min=1), default=None, help="Seeds per grid point (default: config).")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Parallel workers (default: config).")
@simulation_options
@click.pass_context
async def sweep(
    ctx: click.Context,
    grid_default: bool,
    t_values: list[int] | None,
    windows: list[int] | None,
    seeds: int | None,
    workers: int | None,
    params: str | None,
    out: str | None,
    **flags: Any,
) -> None:
    """Run every (T, window, seed) point and write one CSV row per method and node."""
    from batman import cfg

    sweep_cfg = cfg.sweep
    flags["engine"] = flags.get("engine") or sweep_cfg.engine
    base = _build_config(ctx, params, **flags)
    seeds = seeds or sweep_cfg.seeds
    if grid_default:
        grid = SweepGrid.default(seeds, base.seed)
    else:
        grid = SweepGrid.from_ranges(sweep_cfg.t_range, sweep_cfg.window_range, seeds, base.seed)
    if t_values or windows:
        grid = SweepGrid(tuple(t_values or grid.t_values), tuple(windows or grid.windows), seeds, base.seed)

    started = time.monotonic()
    table = await run_sweep_async(grid, base, workers or sweep_cfg.workers)
    write_output(rows_to_csv(table.rows), resolve_out(ctx, out))

    click.secho("Mean absolute error per method and window", fg="cyan", bold=True, err=True)
    for line in format_aggregate(table.aggregate()):
        click.echo(line, err=True)
    click.secho(
        f"{len(grid.points())} runs, {len(table.rows)} rows in {format_timespan(time.monotonic() - started)}",
        fg="green",
        err=True,
    )
