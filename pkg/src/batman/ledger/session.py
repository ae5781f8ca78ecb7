from pathlib import Path

from batman.identity.registry import NodeIdentity
from batman.ledger.chain import LedgerState, apply_transaction, seal_block
from batman.ledger.state import ContractSettings
from batman.ledger.storage import load_ledger, save_ledger
from batman.ledger.transactions import Payload, Transaction


class LedgerSession:
    """A ledger file loaded for one command: replay, append, write back."""

    def __init__(self, path: str | Path, settings: ContractSettings, block_size: int = 0) -> None:
        self.path = Path(path)
        self.block_size = block_size
        self.state: LedgerState = load_ledger(self.path, settings, block_size)

    @classmethod
    def from_cfg(cls, path: str | Path | None = None) -> "LedgerSession":
        from batman import cfg

        return cls(path or cfg.ledger.path, ContractSettings.from_cfg(cfg), cfg.ledger.block_size)

    @property
    def next_tick(self) -> int:
        """One past the latest transaction timestamp, 0 on an empty ledger."""
        return max((tx.timestamp + 1 for tx in self.state.transactions()), default=0)

    def identity(self, hostname: str) -> NodeIdentity:
        return self.state.contracts.registry.lookup_hostname(hostname)

    def submit(self, payload: Payload, author: bytes, at: int | None = None) -> object:
        """Append one transaction and persist the ledger. Nothing is written if the contract rejects it."""
        tx = Transaction(
            seq=self.state.tx_count,
            timestamp=self.next_tick if at is None else at,
            payload=payload,
            author=author,
        )
        result = apply_transaction(self.state, tx)
        if self.block_size and len(self.state.open_txs) >= self.block_size:
            seal_block(self.state)
        save_ledger(self.state, self.path)
        return result
