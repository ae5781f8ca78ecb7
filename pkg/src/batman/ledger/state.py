"""Contract state derived from the ledger by replaying its transactions."""

from typing import TYPE_CHECKING

import msgspec

from batman.common.hashing import sha256
from batman.constants import HASH_SIZE
from batman.errors import Unauthorized, UnknownIdentity
from batman.identity.registry import NodeIdentity, Registry
from batman.ledger.transactions import (
    Endorse,
    RecordEvent,
    RegisterIdentity,
    RevokeKey,
    RevokeMaster,
    RotateKey,
    Transaction,
)
from batman.reputation.contract import EventRecord, ReputationContract, ReputationSnapshot
from batman.weboftrust.endorsements import Endorsement, WebOfTrust

if TYPE_CHECKING:
    from batman.config.validations import Cfg


class ContractSettings(msgspec.Struct, frozen=True):
    """Parameters baked into the preloaded contract code."""

    max_key_lifetime: int = 1_000_000
    pow_threshold: int = 1 << 252
    k: int = 1
    s: int = 150
    n_e: int = 150

    @classmethod
    def from_cfg(cls, cfg: "Cfg") -> "ContractSettings":
        return cls(
            max_key_lifetime=cfg.identity.max_key_lifetime,
            pow_threshold=cfg.sybilguard.threshold,
            k=cfg.weboftrust.k,
            s=cfg.reputation.s,
            n_e=cfg.reputation.n_e,
        )


class StateSnapshot(msgspec.Struct):
    identities: list[NodeIdentity]
    endorsements: list[Endorsement]
    reputation: list[ReputationSnapshot]


def _require_author(tx: Transaction, owner: bytes) -> None:
    if tx.author != owner:
        raise Unauthorized(f"Transaction {tx.seq} is not authored by {owner.hex()}")


class ContractState:
    """Identity registry, web of trust and per-node reputation contracts.

    ``apply`` either performs exactly one contract step or raises a
    ``ContractError`` without changing anything.
    """

    def __init__(self, settings: ContractSettings) -> None:
        self.settings = settings
        self.registry = Registry(max_key_lifetime=settings.max_key_lifetime, pow_threshold=settings.pow_threshold)
        self.wot = WebOfTrust(self.registry)
        self.reputation: dict[bytes, ReputationContract] = {}

    def apply(self, tx: Transaction) -> object:
        if len(tx.author) != HASH_SIZE:
            raise Unauthorized(f"Transaction {tx.seq} has no valid author")

        payload, at = tx.payload, tx.timestamp
        match payload:
            case RegisterIdentity():
                _require_author(tx, payload.hash_m)
                identity = NodeIdentity.create(payload.hash_m, payload.hash_uuid, payload.hostname, payload.keys, at)
                receipt = self.registry.register_identity(identity, payload.pow_nonce)
                self.reputation[payload.hash_m] = ReputationContract(
                    node=payload.hash_m,
                    window_s=self.settings.s,
                    window_n_e=self.settings.n_e,
                    contract_id=receipt.reputation_contract_id,
                )
                return receipt
            case RotateKey():
                _require_author(tx, payload.hash_m)
                return self.registry.rotate_key(
                    payload.hash_m, payload.role, payload.key_hash, payload.valid_from, payload.valid_until
                )
            case RevokeKey():
                _require_author(tx, payload.hash_m)
                return self.registry.revoke_key(payload.hash_m, payload.role, at)
            case RevokeMaster():
                _require_author(tx, payload.hash_m)
                return self.registry.revoke_master(payload.hash_m, at)
            case Endorse():
                _require_author(tx, payload.signer)
                return self.wot.endorse(payload.signer, payload.subject, at)
            case RecordEvent():
                reporter = self.registry.identities.get(tx.author)
                if reporter is None or reporter.revoked:
                    raise Unauthorized(f"Event reports must come from a live identity, not {tx.author.hex()}")
                contract = self.reputation.get(payload.node)
                if contract is None:
                    raise UnknownIdentity(f"No reputation contract for {payload.node.hex()}")
                return contract.record_event(EventRecord(node=payload.node, t=at, outcome=payload.outcome))
        raise TypeError(f"Unsupported payload {type(payload).__name__}")

    def snapshot(self) -> StateSnapshot:
        return StateSnapshot(
            identities=list(self.registry.identities.values()),
            endorsements=self.wot.endorsements(),
            reputation=[contract.snapshot() for contract in self.reputation.values()],
        )


def state_digest(state: ContractState) -> bytes:
    """Hash of the serialized derived state; equal digests mean equal replays."""
    return sha256(msgspec.msgpack.encode(state.snapshot()))
