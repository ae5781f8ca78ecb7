"""Bounded-memory maximum-likelihood estimators of a Bernoulli success rate.

MLM keeps two scalars, MLE keeps the last N_e outcomes, MLT keeps the
(tick, outcome) pairs of the last s ticks. The full-history counts are the
unbounded reference every other estimator is checked against.
"""

from collections import deque

import msgspec

from batman.errors import EmptyWindow, NoData, QueryBeforeLastEvent


class FullHistoryState(msgspec.Struct):
    successes: int = 0
    total: int = 0

    def update(self, outcome: int) -> None:
        self.successes += outcome
        self.total += 1

    def estimate(self) -> float:
        if not self.total:
            raise NoData("No events recorded")
        return self.successes / self.total


class MlmState(msgspec.Struct):
    count: int = 0
    mean: float = 0.0

    def update(self, outcome: int) -> None:
        # mean + (x - mean) / n, the running form of successes / total
        self.count += 1
        self.mean += (outcome - self.mean) / self.count

    def estimate(self) -> float:
        if not self.count:
            raise NoData("No events recorded")
        return self.mean


class EventWindowState:
    """Ring buffer of the last ``capacity`` outcomes."""

    __slots__ = ("buffer", "capacity", "successes")

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ValueError("Event window capacity must be >= 1")
        self.capacity = capacity
        self.buffer: deque[int] = deque(maxlen=capacity)
        self.successes = 0

    def __len__(self) -> int:
        return len(self.buffer)

    def update(self, outcome: int) -> None:
        if len(self.buffer) == self.capacity:
            self.successes -= self.buffer[0]
        self.buffer.append(outcome)
        self.successes += outcome

    def estimate(self) -> float:
        """Mean of the last min(N_e, count) outcomes."""
        if not self.buffer:
            raise NoData("No events recorded")
        return self.successes / len(self.buffer)


class TimeWindowState:
    """(tick, outcome) pairs with tick in (now - size, now], now being the last recorded tick."""

    __slots__ = ("buffer", "size", "successes")

    def __init__(self, size: int) -> None:
        if size < 1:
            raise ValueError("Time window size must be >= 1")
        self.size = size
        self.buffer: deque[tuple[int, int]] = deque()
        self.successes = 0

    def __len__(self) -> int:
        return len(self.buffer)

    def update(self, t: int, outcome: int) -> None:
        self.buffer.append((t, outcome))
        self.successes += outcome
        self._evict(t)

    def _evict(self, now: int) -> None:
        horizon = now - self.size
        while self.buffer and self.buffer[0][0] <= horizon:
            _, old = self.buffer.popleft()
            self.successes -= old

    def counts(self, now: int) -> tuple[int, int]:
        """(successes, events) inside (now - size, now] without evicting."""
        if self.buffer and now < self.buffer[-1][0]:
            raise QueryBeforeLastEvent(f"Query tick {now} precedes the last recorded event at {self.buffer[-1][0]}")
        horizon = now - self.size
        successes, events = self.successes, len(self.buffer)
        for t, outcome in self.buffer:
            if t > horizon:
                break
            successes -= outcome
            events -= 1
        return successes, events

    def estimate(self, now: int) -> float:
        successes, events = self.counts(now)
        if not events:
            raise EmptyWindow(f"No events in ({now - self.size}, {now}]")
        return successes / events
