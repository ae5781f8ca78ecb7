"""Append-only hash chain of blocks hosting all contract state."""

from collections.abc import Iterable, Iterator

import msgspec

from batman.common.codec import Decoder, Encoder
from batman.common.hashing import sha256
from batman.constants import ZERO_HASH
from batman.errors import (
    CodecError,
    ContractError,
    ContractRejection,
    EmptyBlock,
    InvalidTransaction,
    NonMonotoneTimestamp,
    SeqMismatch,
)
from batman.ledger.state import ContractSettings, ContractState
from batman.ledger.transactions import Transaction, decode_transaction, encode_transaction, transaction_to_bytes


class Block(msgspec.Struct, frozen=True):
    height: int
    prev_hash: bytes
    txs: tuple[Transaction, ...]
    block_hash: bytes


def _encode_body(enc: Encoder, height: int, prev_hash: bytes, txs: Iterable[Transaction]) -> Encoder:
    txs = tuple(txs)
    enc.u64(height).hash256(prev_hash).u32(len(txs))
    for tx in txs:
        encode_transaction(enc, tx)
    return enc


def compute_block_hash(height: int, prev_hash: bytes, txs: Iterable[Transaction]) -> bytes:
    return sha256(_encode_body(Encoder(), height, prev_hash, txs).getvalue())


def block_to_bytes(block: Block) -> bytes:
    return _encode_body(Encoder(), block.height, block.prev_hash, block.txs).hash256(block.block_hash).getvalue()


def block_from_bytes(data: bytes) -> Block:
    dec = Decoder(data)
    height, prev_hash = dec.u64(), dec.hash256()
    txs = tuple(decode_transaction(dec) for _ in range(dec.u32()))
    block_hash = dec.hash256()
    dec.finish()
    return Block(height=height, prev_hash=prev_hash, txs=txs, block_hash=block_hash)


class LedgerState:
    """Sealed blocks, the open block and the contract state derived from both."""

    def __init__(self, settings: ContractSettings | None = None) -> None:
        self.settings = settings or ContractSettings()
        self.blocks: list[Block] = []
        self.open_txs: list[Transaction] = []
        self.contracts = ContractState(self.settings)

    @property
    def tx_count(self) -> int:
        return sum(len(block.txs) for block in self.blocks) + len(self.open_txs)

    @property
    def head_hash(self) -> bytes:
        return self.blocks[-1].block_hash if self.blocks else ZERO_HASH

    @property
    def last_timestamp(self) -> int | None:
        if self.open_txs:
            return self.open_txs[-1].timestamp
        return self.blocks[-1].txs[-1].timestamp if self.blocks else None

    def transactions(self) -> Iterator[Transaction]:
        """Every transaction in seq order, sealed blocks first."""
        for block in self.blocks:
            yield from block.txs
        yield from self.open_txs


def apply_transaction(state: LedgerState, tx: Transaction) -> object:
    """Add ``tx`` to the open block after its contract accepts it, returning the contract's result.

    Raises:
        SeqMismatch: If ``tx.seq`` is not the current transaction count.
        InvalidTransaction: If ``tx`` has no canonical encoding.
        NonMonotoneTimestamp: If ``tx.timestamp`` precedes the latest transaction's.
        ContractRejection: If the target contract refuses the payload.
    """
    expected = state.tx_count
    if tx.seq != expected:
        raise SeqMismatch(expected, tx.seq)
    try:
        transaction_to_bytes(tx)
    except CodecError as e:
        raise InvalidTransaction(f"Transaction {tx.seq} cannot be encoded: {e}") from e
    last = state.last_timestamp
    if last is not None and tx.timestamp < last:
        raise NonMonotoneTimestamp(last, tx.timestamp)
    try:
        result = state.contracts.apply(tx)
    except ContractError as e:
        raise ContractRejection(e) from e
    state.open_txs.append(tx)
    return result


def append_transaction(state: LedgerState, tx: Transaction) -> LedgerState:
    apply_transaction(state, tx)
    return state


def seal_block(state: LedgerState) -> LedgerState:
    if not state.open_txs:
        raise EmptyBlock("Cannot seal a block without transactions")
    height = len(state.blocks)
    txs = tuple(state.open_txs)
    block_hash = compute_block_hash(height, state.head_hash, txs)
    state.blocks.append(Block(height=height, prev_hash=state.head_hash, txs=txs, block_hash=block_hash))
    state.open_txs = []
    return state


def verify_chain(blocks: LedgerState | Iterable[Block]) -> bool:
    """True iff every block hash recomputes and every prev_hash links to its parent."""
    if isinstance(blocks, LedgerState):
        blocks = blocks.blocks
    prev_hash = ZERO_HASH
    for height, block in enumerate(blocks):
        if block.height != height or block.prev_hash != prev_hash:
            return False
        try:
            if compute_block_hash(block.height, block.prev_hash, block.txs) != block.block_hash:
                return False
        except CodecError:
            return False
        prev_hash = block.block_hash
    return True


def replay(
    txs: Iterable[Transaction],
    settings: ContractSettings | None = None,
    block_size: int = 0,
) -> LedgerState:
    """Rebuild a ledger from scratch, sealing a block every ``block_size`` transactions.

    Transactions past the last full block stay in the open block.
    """
    state = LedgerState(settings)
    for tx in txs:
        append_transaction(state, tx)
        if block_size and len(state.open_txs) >= block_size:
            seal_block(state)
    return state
