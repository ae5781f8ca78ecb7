from batman.ledger.chain import (
    Block,
    LedgerState,
    append_transaction,
    apply_transaction,
    block_from_bytes,
    block_to_bytes,
    compute_block_hash,
    replay,
    seal_block,
    verify_chain,
)
from batman.ledger.scenario import ScenarioBuilder, make_registration, random_scenario
from batman.ledger.session import LedgerSession
from batman.ledger.state import ContractSettings, ContractState, state_digest
from batman.ledger.storage import load_ledger, load_transactions, save_ledger
from batman.ledger.transactions import (
    Endorse,
    Payload,
    RecordEvent,
    RegisterIdentity,
    RevokeKey,
    RevokeMaster,
    RotateKey,
    Transaction,
    transaction_from_bytes,
    transaction_to_bytes,
)

__all__ = [
    "Block",
    "ContractSettings",
    "ContractState",
    "Endorse",
    "LedgerSession",
    "LedgerState",
    "Payload",
    "RecordEvent",
    "RegisterIdentity",
    "RevokeKey",
    "RevokeMaster",
    "RotateKey",
    "ScenarioBuilder",
    "Transaction",
    "append_transaction",
    "apply_transaction",
    "block_from_bytes",
    "block_to_bytes",
    "compute_block_hash",
    "load_ledger",
    "load_transactions",
    "make_registration",
    "random_scenario",
    "replay",
    "save_ledger",
    "seal_block",
    "state_digest",
    "transaction_from_bytes",
    "transaction_to_bytes",
    "verify_chain",
]
