"""Seeded demo scenarios mixing every contract operation."""

from collections.abc import Mapping

import numpy as np

from batman.common.hashing import sha256
from batman.errors import ContractRejection, SimulationError
from batman.identity.registry import KeyGrant, KeyRole
from batman.ledger.chain import LedgerState, append_transaction, seal_block
from batman.ledger.state import ContractSettings
from batman.ledger.transactions import (
    Endorse,
    Payload,
    RecordEvent,
    RegisterIdentity,
    RevokeKey,
    RevokeMaster,
    RotateKey,
    Transaction,
)
from batman.sybilguard.pow import mine_uuid, uuid_hash

OPERATIONS = ("register", "rotate", "revoke_key", "revoke_master", "endorse", "event")
# relative frequency of each operation once a few identities exist
_WEIGHTS = np.array([0.12, 0.1, 0.05, 0.03, 0.2, 0.5])


def derive_hash(label: bytes, *parts: int) -> bytes:
    """Deterministic stand-in for a public key hash."""
    return sha256(label, *(part.to_bytes(8, "little") for part in parts))


def make_registration(
    hash_m: bytes,
    hostname: str,
    at: int,
    threshold: int,
    lifetime: int,
    max_iters: int = 1_000_000,
    nonce: int | None = None,
    key_hashes: Mapping[KeyRole, bytes | None] | None = None,
) -> RegisterIdentity:
    """Registration payload granting one key per role, valid for ``lifetime`` ticks from ``at``.

    The uuid is mined for ``hash_m`` unless ``nonce`` is given. Roles missing
    from ``key_hashes`` get a key hash derived from ``hash_m``.
    """
    if nonce is None:
        mined = mine_uuid(hash_m, threshold, max_iters)
        nonce, hash_uuid = mined.nonce, mined.hash_uuid
    else:
        hash_uuid = uuid_hash(hash_m, nonce)
    key_hashes = key_hashes or {}
    keys = tuple(
        KeyGrant(
            role=role,
            key_hash=key_hashes.get(role) or sha256(hash_m, bytes([role])),
            valid_from=at,
            valid_until=at + lifetime,
        )
        for role in KeyRole
    )
    return RegisterIdentity(hash_m=hash_m, hash_uuid=hash_uuid, hostname=hostname, pow_nonce=nonce, keys=keys)


class ScenarioBuilder:
    def __init__(self, seed: int, settings: ContractSettings | None = None, block_size: int = 0) -> None:
        self.rng = np.random.Generator(np.random.PCG64(seed))
        self.seed = seed
        self.state = LedgerState(settings)
        self.block_size = block_size
        self.tick = 0
        self.created = 0

    @property
    def settings(self) -> ContractSettings:
        return self.state.settings

    def submit(self, payload: Payload, author: bytes) -> bool:
        tx = Transaction(seq=self.state.tx_count, timestamp=self.tick, payload=payload, author=author)
        try:
            append_transaction(self.state, tx)
        except ContractRejection:
            return False
        if self.block_size and len(self.state.open_txs) >= self.block_size:
            seal_block(self.state)
        return True

    def _pick(self, candidates: list[bytes]) -> bytes:
        return candidates[int(self.rng.integers(len(candidates)))]

    def _live(self) -> list[bytes]:
        return [h for h, identity in self.state.contracts.registry.identities.items() if not identity.revoked]

    def _propose(self, op: str) -> tuple[Payload, bytes] | None:
        live = self._live()
        if op == "register" or not live:
            self.created += 1
            hash_m = derive_hash(b"master", self.seed, self.created)
            lifetime = min(self.settings.max_key_lifetime, 500)
            payload = make_registration(
                hash_m, f"node-{self.created}", self.tick, self.settings.pow_threshold, lifetime
            )
            return payload, hash_m

        hash_m = self._pick(live)
        role = KeyRole(int(self.rng.integers(len(KeyRole))))
        match op:
            case "rotate":
                self.created += 1
                until = self.tick + int(self.rng.integers(1, min(self.settings.max_key_lifetime, 500) + 1))
                key_hash = derive_hash(b"key", self.seed, self.created)
                payload = RotateKey(
                    hash_m=hash_m, role=role, key_hash=key_hash, valid_from=self.tick, valid_until=until
                )
                return payload, hash_m
            case "revoke_key":
                return RevokeKey(hash_m=hash_m, role=role), hash_m
            case "revoke_master":
                return RevokeMaster(hash_m=hash_m), hash_m
            case "endorse":
                if len(live) < 2:
                    return None
                return Endorse(signer=hash_m, subject=self._pick([h for h in live if h != hash_m])), hash_m
            case _:
                outcome = int(self.rng.random() < 0.7)
                return RecordEvent(node=self._pick(list(self.state.contracts.reputation)), outcome=outcome), hash_m

    def build(self, n_txs: int, max_attempts: int | None = None) -> LedgerState:
        """Append ``n_txs`` accepted transactions; rejected proposals are dropped.

        Raises:
            SimulationError: If the attempt budget runs out first.
        """
        attempts = max_attempts if max_attempts is not None else 50 * max(n_txs, 1)
        target = self.state.tx_count + n_txs
        while self.state.tx_count < target:
            if attempts <= 0:
                raise SimulationError(f"Gave up after {self.state.tx_count} transactions")
            attempts -= 1
            self.tick += int(self.rng.integers(1, 4))
            op = OPERATIONS[int(self.rng.choice(len(OPERATIONS), p=_WEIGHTS))]
            proposal = self._propose(op)
            if proposal is not None:
                self.submit(*proposal)
        return self.state


def random_scenario(
    n_txs: int,
    seed: int,
    settings: ContractSettings | None = None,
    block_size: int = 0,
) -> LedgerState:
    return ScenarioBuilder(seed, settings, block_size).build(n_txs)
