from batman.reputation.contract import EventRecord, Method, ReputationContract, ReputationSnapshot
from batman.reputation.estimators import EventWindowState, FullHistoryState, MlmState, TimeWindowState

__all__ = [
    "EventRecord",
    "EventWindowState",
    "FullHistoryState",
    "Method",
    "MlmState",
    "ReputationContract",
    "ReputationSnapshot",
    "TimeWindowState",
]
