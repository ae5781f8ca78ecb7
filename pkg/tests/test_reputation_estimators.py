import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batman.errors import EmptyWindow, NoData, QueryBeforeLastEvent
from batman.reputation.estimators import EventWindowState, FullHistoryState, MlmState, TimeWindowState


def test_mlm_running_mean() -> None:
    state = MlmState()
    with pytest.raises(NoData):
        state.estimate()

    state.update(1)
    assert (state.count, state.estimate()) == (1, 1.0)
    state.update(0)
    assert state.estimate() == 0.5


def test_mlm_all_failures_is_zero() -> None:
    state = MlmState()
    for _ in range(3):
        state.update(0)

    assert state.estimate() == 0.0


def test_mlm_keeps_two_scalars() -> None:
    assert MlmState.__struct_fields__ == ("count", "mean")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=500))
def test_mlm_matches_full_history(outcomes: list[int]) -> None:
    mlm, full = MlmState(), FullHistoryState()
    for outcome in outcomes:
        mlm.update(outcome)
        full.update(outcome)

    assert abs(mlm.estimate() - full.estimate()) <= 1e-9
    assert 0.0 <= mlm.estimate() <= 1.0


def test_mlm_matches_full_history_on_long_streams() -> None:
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        length = min(int(np.exp(rng.uniform(0, np.log(10_000)))), 10_000)
        outcomes = (rng.random(length) < rng.random()).astype(int).tolist()
        mlm, full = MlmState(), FullHistoryState()
        for outcome in outcomes:
            mlm.update(outcome)
            full.update(outcome)
        assert abs(mlm.estimate() - full.estimate()) <= 1e-9


def test_event_window_known_values() -> None:
    state = EventWindowState(2)
    with pytest.raises(NoData):
        state.estimate()
    for outcome in (1, 0, 1):
        state.update(outcome)

    assert state.estimate() == 0.5
    assert len(state) == 2


def test_event_window_short_history_uses_every_event() -> None:
    state = EventWindowState(150)
    for outcome in (1, 1, 0, 1):
        state.update(outcome)

    assert state.estimate() == 0.75


def test_event_window_is_mean_of_last_events() -> None:
    rng = np.random.default_rng(7)
    outcomes = (rng.random(5000) < 0.3).astype(int).tolist()
    state = EventWindowState(150)
    for i, outcome in enumerate(outcomes, start=1):
        state.update(outcome)
        if i % 97 == 0:
            recent = outcomes[max(0, i - 150) : i]
            assert state.estimate() == sum(recent) / len(recent)
    assert len(state) == 150


def test_time_window_known_values() -> None:
    state = TimeWindowState(150)
    for t, outcome in enumerate((1, 0, 1, 1), start=1):
        state.update(t, outcome)

    assert state.estimate(4) == 0.75
    assert state.estimate(151) == 2 / 3
    with pytest.raises(EmptyWindow):
        state.estimate(154)


def test_time_window_rejects_queries_before_last_event() -> None:
    state = TimeWindowState(10)
    state.update(5, 1)

    with pytest.raises(QueryBeforeLastEvent):
        state.counts(4)


def test_time_window_matches_recount_with_gaps() -> None:
    rng = np.random.default_rng(11)
    size = 150
    state = TimeWindowState(size)
    seen: list[tuple[int, int]] = []
    for t in range(1, 3001):
        if rng.random() < 0.4:
            outcome = int(rng.random() < 0.6)
            state.update(t, outcome)
            seen.append((t, outcome))
        inside = [o for tick, o in seen if t - size < tick <= t]
        if inside:
            assert math.isclose(state.estimate(t), sum(inside) / len(inside), rel_tol=0, abs_tol=1e-12)
        else:
            with pytest.raises(EmptyWindow):
                state.estimate(t)
    assert all(tick > seen[-1][0] - size for tick, _ in state.buffer)


def test_window_sizes_must_be_positive() -> None:
    with pytest.raises(ValueError):
        EventWindowState(0)
    with pytest.raises(ValueError):
        TimeWindowState(0)


def test_event_order_matters_for_windows_only() -> None:
    early, late = [1, 1, 0, 0], [0, 0, 1, 1]
    estimates = []
    for outcomes in (early, late):
        window, full = EventWindowState(2), FullHistoryState()
        for outcome in outcomes:
            window.update(outcome)
            full.update(outcome)
        estimates.append((window.estimate(), full.estimate()))

    assert estimates == [(0.0, 0.5), (1.0, 0.5)]
