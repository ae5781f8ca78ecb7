from collections.abc import Callable
from typing import Literal

import msgspec

from batman.errors import InvalidEvent, NodeMismatch, NonMonotoneTick
from batman.reputation.estimators import EventWindowState, FullHistoryState, MlmState, TimeWindowState

Method = Literal["ml", "mlt", "mle", "mlm"]


class EventRecord(msgspec.Struct, frozen=True):
    node: bytes
    t: int
    outcome: int

    def __post_init__(self):
        if self.outcome not in (0, 1):
            raise InvalidEvent(f"Outcome must be 0 or 1, got {self.outcome}")


class ReputationSnapshot(msgspec.Struct, frozen=True):
    node: bytes
    contract_id: bytes
    last_tick: int | None
    successes: int
    total: int
    mlm_count: int
    mlm_mean: float
    event_window: list[int]
    time_window: list[tuple[int, int]]


class ReputationContract:
    """Collects the events of one node and estimates p(A_n) on demand.

    All four estimators see every event exactly once, in tick order.
    """

    def __init__(self, node: bytes, window_s: int, window_n_e: int, contract_id: bytes = b"") -> None:
        self.node = node
        self.contract_id = contract_id
        self.history = FullHistoryState()
        self.mlm = MlmState()
        self.events = EventWindowState(window_n_e)
        self.window = TimeWindowState(window_s)
        self.last_tick: int | None = None

    def record_event(self, e: EventRecord) -> "ReputationContract":
        if e.node != self.node:
            raise NodeMismatch(f"Event for {e.node.hex()} sent to the contract of {self.node.hex()}")
        if self.last_tick is not None and e.t <= self.last_tick:
            raise NonMonotoneTick(f"Event tick {e.t} is not after the last recorded tick {self.last_tick}")

        self.history.update(e.outcome)
        self.mlm.update(e.outcome)
        self.events.update(e.outcome)
        self.window.update(e.t, e.outcome)
        self.last_tick = e.t
        return self

    def estimate_ml(self) -> float:
        return self.history.estimate()

    def estimate_mlt(self, now: int | None = None) -> float:
        return self.window.estimate(self._now(now))

    def estimate_mle(self) -> float:
        return self.events.estimate()

    def estimate_mlm(self) -> float:
        return self.mlm.estimate()

    def estimate(self, method: Method, now: int | None = None) -> float:
        estimators: dict[str, Callable[[], float]] = {
            "ml": self.estimate_ml,
            "mlt": lambda: self.estimate_mlt(now),
            "mle": self.estimate_mle,
            "mlm": self.estimate_mlm,
        }
        try:
            return estimators[method]()
        except KeyError:
            raise ValueError(f"Unknown estimation method {method!r}") from None

    def sample_count(self, method: Method, now: int | None = None) -> int:
        """Number of events the given method's estimate is based on."""
        if method == "mlt":
            return self.window.counts(self._now(now))[1]
        if method == "mle":
            return len(self.events)
        return self.history.total

    def _now(self, now: int | None) -> int:
        if now is not None:
            return now
        return self.last_tick if self.last_tick is not None else 0

    def snapshot(self) -> ReputationSnapshot:
        return ReputationSnapshot(
            node=self.node,
            contract_id=self.contract_id,
            last_tick=self.last_tick,
            successes=self.history.successes,
            total=self.history.total,
            mlm_count=self.mlm.count,
            mlm_mean=self.mlm.mean,
            event_window=list(self.events.buffer),
            time_window=list(self.window.buffer),
        )
