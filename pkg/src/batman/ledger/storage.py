"""Ledger files: one hex-encoded canonical transaction per line, in seq order.

Derived state is never written; loading replays every transaction.
"""

import os
from collections.abc import Iterable
from pathlib import Path

from batman.errors import CodecError
from batman.ledger.chain import LedgerState, replay
from batman.ledger.state import ContractSettings
from batman.ledger.transactions import Transaction, transaction_from_bytes, transaction_to_bytes


def dump_transactions(txs: Iterable[Transaction], path: str | Path) -> int:
    """Write ``txs`` to ``path``, replacing it atomically. Returns the number written."""
    path = Path(path)
    lines = [transaction_to_bytes(tx).hex() for tx in txs]
    tmp = path.with_name(f".{path.name}.tmp")
    tmp.write_text("".join(f"{line}\n" for line in lines), encoding="ascii")
    os.replace(tmp, path)
    return len(lines)


def load_transactions(path: str | Path) -> list[Transaction]:
    txs: list[Transaction] = []
    with open(path, encoding="ascii") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                txs.append(transaction_from_bytes(bytes.fromhex(line)))
            except ValueError as e:
                raise CodecError(f"{path}:{lineno}: not a hex encoded transaction") from e
            except CodecError as e:
                raise CodecError(f"{path}:{lineno}: {e}") from e
    return txs


def load_ledger(path: str | Path, settings: ContractSettings | None = None, block_size: int = 0) -> LedgerState:
    """Replay the ledger stored at ``path``. A missing file is an empty ledger."""
    if not Path(path).exists():
        return LedgerState(settings)
    return replay(load_transactions(path), settings, block_size)


def save_ledger(state: LedgerState, path: str | Path) -> int:
    return dump_transactions(state.transactions(), path)
