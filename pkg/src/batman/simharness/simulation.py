"""Single simulation runs: reliabilities, Bernoulli event streams and estimate traces."""

from collections.abc import Sequence

import msgspec
import numpy as np
import numpy.typing as npt

from batman.config.validations import SimConfig
from batman.constants import METHODS
from batman.errors import EstimateError, SimulationError
from batman.reputation.contract import EventRecord, ReputationContract

FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]


class SweepRow(msgspec.Struct, frozen=True):
    method: str
    T: int
    s: int
    N_e: int
    node: int
    seed: int
    true_p: float
    final_estimate: float
    mae: float
    var: float


class SimulationResult(msgspec.Struct):
    config: SimConfig
    reliabilities: FloatArray
    # (method, tick, node), NaN where an estimator has no data
    traces: FloatArray
    rows: list[SweepRow]

    def trace(self, method: str) -> FloatArray:
        return self.traces[METHODS.index(method)]


def make_rngs(seed: int) -> tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    """Independent PCG64 streams for reliabilities, arrivals and outcomes.

    Each stream only depends on the seed, so runs that share a seed share
    reliabilities, and a longer run extends the events of a shorter one.
    """
    children = np.random.SeedSequence(seed).spawn(3)
    reliability, arrival, outcome = (np.random.Generator(np.random.PCG64(child)) for child in children)
    return reliability, arrival, outcome


def draw_reliabilities(config: SimConfig, rng: np.random.Generator | None = None) -> FloatArray:
    """Draw p(A_n) for every node from Normal(mu, sigma), resampling values outside [0, 1]."""
    if config.sigma == 0:
        return np.full(config.n_nodes, config.mu, dtype=np.float64)
    if rng is None:
        rng = make_rngs(config.seed)[0]

    p = rng.normal(config.mu, config.sigma, config.n_nodes)
    outside = (p < 0.0) | (p > 1.0)
    while outside.any():
        p[outside] = rng.normal(config.mu, config.sigma, int(outside.sum()))
        outside = (p < 0.0) | (p > 1.0)
    return p


def generate_streams(
    config: SimConfig,
    reliabilities: FloatArray,
    arrival_rng: np.random.Generator,
    outcome_rng: np.random.Generator,
) -> tuple[BoolArray, BoolArray]:
    """Arrival and outcome matrices of shape (T, n_nodes); row ``i`` is tick ``i + 1``.

    Outcomes are drawn for every cell and only count where an event arrives.
    """
    shape = (config.ticks, config.n_nodes)
    arrivals = arrival_rng.random(shape) < config.p_arrival
    outcomes = outcome_rng.random(shape) < reliabilities[np.newaxis, :]
    return arrivals, outcomes & arrivals


def _contract_traces(config: SimConfig, arrivals: BoolArray, outcomes: BoolArray) -> FloatArray:
    traces = np.full((len(METHODS), config.ticks, config.n_nodes), np.nan)
    nodes = [node.to_bytes(4, "little") for node in range(config.n_nodes)]
    contracts = [ReputationContract(node=node, window_s=config.s, window_n_e=config.n_e) for node in nodes]

    for i in range(config.ticks):
        tick = i + 1
        for j, contract in enumerate(contracts):
            if arrivals[i, j]:
                contract.record_event(EventRecord(node=nodes[j], t=tick, outcome=int(outcomes[i, j])))
            for m, method in enumerate(METHODS):
                try:
                    traces[m, i, j] = contract.estimate(method, now=tick)
                except EstimateError:
                    pass
    return traces


def _ratio(num: npt.NDArray[np.int64], den: npt.NDArray[np.int64]) -> FloatArray:
    out = np.full(num.shape, np.nan)
    np.divide(num, den, out=out, where=den > 0)
    return out


def _running_means(arrivals: BoolArray, outcomes: BoolArray) -> FloatArray:
    """The MLM recurrence applied tick by tick to every node at once."""
    ticks, n_nodes = arrivals.shape
    out = np.full((ticks, n_nodes), np.nan)
    values = outcomes.astype(np.float64)
    count = np.zeros(n_nodes, dtype=np.int64)
    mean = np.zeros(n_nodes, dtype=np.float64)
    for i in range(ticks):
        hit = arrivals[i]
        count[hit] += 1
        mean[hit] += (values[i, hit] - mean[hit]) / count[hit]
        out[i, count > 0] = mean[count > 0]
    return out


def _vectorized_traces(config: SimConfig, arrivals: BoolArray, outcomes: BoolArray) -> FloatArray:
    ticks, n_nodes = arrivals.shape
    traces = np.full((len(METHODS), ticks, n_nodes), np.nan)
    zero = np.zeros((1, n_nodes), dtype=np.int64)
    # prefix sums with a leading zero row: index t covers ticks 1..t
    events = np.concatenate([zero, np.cumsum(arrivals, axis=0, dtype=np.int64)])
    successes = np.concatenate([zero, np.cumsum(outcomes, axis=0, dtype=np.int64)])

    t = np.arange(1, ticks + 1)
    ml = _ratio(successes[1:], events[1:])
    start = np.maximum(t - config.s, 0)
    mlt = _ratio(successes[1:] - successes[start], events[1:] - events[start])

    mle = np.full((ticks, n_nodes), np.nan)
    for j in range(n_nodes):
        # successes after the k-th event of node j
        by_event = np.concatenate([[0], np.cumsum(outcomes[arrivals[:, j], j], dtype=np.int64)])
        count = events[1:, j]
        first = np.maximum(count - config.n_e, 0)
        mle[:, j] = _ratio(by_event[count] - by_event[first], count - first)

    traces[METHODS.index("ml")] = ml
    traces[METHODS.index("mlt")] = mlt
    traces[METHODS.index("mle")] = mle
    traces[METHODS.index("mlm")] = _running_means(arrivals, outcomes)
    return traces


def _nan_stats(values: FloatArray) -> tuple[float, float]:
    """(mean, variance) over non-NaN entries, NaN when there are none."""
    valid = values[~np.isnan(values)]
    if not valid.size:
        return float("nan"), float("nan")
    return float(valid.mean()), float(valid.var())


def summarize(config: SimConfig, reliabilities: FloatArray, traces: FloatArray) -> list[SweepRow]:
    """One row per (method, node) with error statistics over post-burn-in ticks."""
    burn_in = config.effective_burn_in
    rows: list[SweepRow] = []
    for m, method in enumerate(METHODS):
        for node in range(config.n_nodes):
            trace = traces[m, :, node]
            true_p = float(reliabilities[node])
            tail = trace[burn_in:]
            mae, _ = _nan_stats(np.abs(tail - true_p))
            _, var = _nan_stats(tail)
            rows.append(
                SweepRow(
                    method=method,
                    T=config.ticks,
                    s=config.s,
                    N_e=config.n_e,
                    node=node,
                    seed=config.seed,
                    true_p=true_p,
                    final_estimate=float(trace[-1]),
                    mae=mae,
                    var=var,
                )
            )
    return rows


def run_simulation(config: SimConfig, reliabilities: Sequence[float] | FloatArray | None = None) -> SimulationResult:
    """Simulate ``config.ticks`` ticks and trace all four estimators for every node.

    Args:
        config: Run parameters. ``config.engine`` selects per-event contract
            updates or the same arithmetic on numpy arrays.
        reliabilities: Fixed p(A_n) per node instead of Gaussian draws.

    Raises:
        SimulationError: If ``reliabilities`` does not match the node count or leaves [0, 1].
    """
    reliability_rng, arrival_rng, outcome_rng = make_rngs(config.seed)
    if reliabilities is None:
        p = draw_reliabilities(config, reliability_rng)
    else:
        p = np.asarray(reliabilities, dtype=np.float64)
        if p.shape != (config.n_nodes,):
            raise SimulationError(f"Expected {config.n_nodes} reliabilities, got {p.size}")
        if ((p < 0.0) | (p > 1.0)).any():
            raise SimulationError("Reliabilities must lie in [0, 1]")

    arrivals, outcomes = generate_streams(config, p, arrival_rng, outcome_rng)
    if config.engine == "contract":
        traces = _contract_traces(config, arrivals, outcomes)
    else:
        traces = _vectorized_traces(config, arrivals, outcomes)
    return SimulationResult(config=config, reliabilities=p, traces=traces, rows=summarize(config, p, traces))
