"""Identity registry and per-identity key management contracts.

State transitions check every precondition before writing, so a rejected
operation leaves the registry untouched.
"""

import enum
import re
from collections.abc import Iterator, Sequence

import msgspec

from batman.common.hashing import sha256
from batman.constants import HASH_SIZE, KEY_CONTRACT_CODE, REPUTATION_CONTRACT_CODE
from batman.errors import (
    AlreadyRevoked,
    BadWindow,
    DuplicateHostname,
    DuplicateIdentity,
    InvalidIdentity,
    KeyLifetimeExceeded,
    KeyNotActive,
    MasterRevoked,
    PowInvalid,
    UnknownIdentity,
)
from batman.sybilguard.pow import verify_uuid

RE_HOSTNAME = re.compile(r"^[A-Za-z0-9](?:[A-Za-z0-9-]{0,61}[A-Za-z0-9])?$")


class KeyRole(enum.IntEnum):
    AUTHENTICATION = 0
    SIGNING = 1
    ENCRYPTION = 2

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "KeyRole":
        try:
            return cls[label.strip().upper()]
        except KeyError:
            raise ValueError(f"Unknown key role {label!r}") from None


class KeyGrant(msgspec.Struct, frozen=True):
    """A secondary key as submitted at registration or rotation."""

    role: KeyRole
    key_hash: bytes
    valid_from: int
    valid_until: int


class SecondaryKeyRecord(msgspec.Struct):
    role: KeyRole
    key_hash: bytes
    valid_from: int
    # exclusive
    valid_until: int
    revoked_at: int | None = None
    superseded_at: int | None = None

    def is_valid_at(self, at: int) -> bool:
        if not self.valid_from <= at < self.valid_until:
            return False
        return self.revoked_at is None or at < self.revoked_at


class NodeIdentity(msgspec.Struct):
    hash_m: bytes
    hash_uuid: bytes
    hostname: str
    keys: dict[KeyRole, SecondaryKeyRecord]
    registered_at: int = 0
    revoked: bool = False
    revoked_at: int | None = None
    key_history: list[SecondaryKeyRecord] = []

    @classmethod
    def create(
        cls,
        hash_m: bytes,
        hash_uuid: bytes,
        hostname: str,
        grants: Sequence[KeyGrant],
        registered_at: int,
    ) -> "NodeIdentity":
        """Build an unregistered identity from its triple and key grants.

        Raises:
            InvalidIdentity: If a role is missing or appears twice.
        """
        keys: dict[KeyRole, SecondaryKeyRecord] = {}
        for grant in grants:
            if grant.role in keys:
                raise InvalidIdentity(f"Duplicate {grant.role.label} key")
            keys[grant.role] = SecondaryKeyRecord(
                role=grant.role,
                key_hash=grant.key_hash,
                valid_from=grant.valid_from,
                valid_until=grant.valid_until,
            )
        missing = [role.label for role in KeyRole if role not in keys]
        if missing:
            raise InvalidIdentity(f"Missing keys: {', '.join(missing)}")
        return cls(hash_m=hash_m, hash_uuid=hash_uuid, hostname=hostname, keys=keys, registered_at=registered_at)

    def is_revoked_at(self, at: int) -> bool:
        return self.revoked and self.revoked_at is not None and at >= self.revoked_at

    def records(self, role: KeyRole) -> Iterator[SecondaryKeyRecord]:
        """Superseded records for a role, oldest first, then the active one."""
        yield from (record for record in self.key_history if record.role == role)
        yield self.keys[role]


class RegistrationReceipt(msgspec.Struct, frozen=True):
    hash_m: bytes
    hostname: str
    registered_at: int
    key_contract_id: bytes
    reputation_contract_id: bytes


def contract_id(code: bytes, hash_m: bytes) -> bytes:
    """Id of a contract emitted from preloaded ``code`` for one identity."""
    return sha256(code, hash_m)


def _check_window(valid_from: int, valid_until: int, max_key_lifetime: int) -> None:
    if valid_from >= valid_until:
        raise BadWindow(f"Empty validity window [{valid_from}, {valid_until})")
    if valid_until - valid_from > max_key_lifetime:
        raise KeyLifetimeExceeded(
            f"Window of {valid_until - valid_from} ticks exceeds the maximum key lifetime of {max_key_lifetime}"
        )


class Registry:
    """The identity registry contract together with the key contracts it emits."""

    def __init__(self, max_key_lifetime: int, pow_threshold: int) -> None:
        self.max_key_lifetime = max_key_lifetime
        self.pow_threshold = pow_threshold
        self.identities: dict[bytes, NodeIdentity] = {}
        self._seen_uuids: set[bytes] = set()
        self._live_hostnames: dict[str, bytes] = {}

    def __contains__(self, hash_m: bytes) -> bool:
        return hash_m in self.identities

    def get(self, hash_m: bytes) -> NodeIdentity:
        try:
            return self.identities[hash_m]
        except KeyError:
            raise UnknownIdentity(f"No identity registered for {hash_m.hex()}") from None

    def lookup_hostname(self, hostname: str) -> NodeIdentity:
        """Find the live identity using ``hostname``, or the latest revoked one.

        Raises:
            UnknownIdentity: If no identity ever used the hostname.
        """
        key = hostname.lower()
        if key in self._live_hostnames:
            return self.identities[self._live_hostnames[key]]
        for identity in reversed(self.identities.values()):
            if identity.hostname.lower() == key:
                return identity
        raise UnknownIdentity(f"No identity with hostname {hostname!r}")

    def register_identity(self, identity: NodeIdentity, pow_nonce: int) -> RegistrationReceipt:
        if len(identity.hash_m) != HASH_SIZE or len(identity.hash_uuid) != HASH_SIZE:
            raise InvalidIdentity(f"hash_m and hash_uuid must be {HASH_SIZE} bytes")
        if not RE_HOSTNAME.match(identity.hostname):
            raise InvalidIdentity(f"Hostname {identity.hostname!r} is not a valid DNS label")
        if set(identity.keys) != set(KeyRole):
            raise InvalidIdentity("Exactly one key per role is required")
        if identity.revoked or identity.key_history:
            raise InvalidIdentity("Only fresh identities can be registered")

        if identity.hash_m in self.identities or identity.hash_uuid in self._seen_uuids:
            raise DuplicateIdentity(f"Identity {identity.hash_m.hex()} was already registered")
        if identity.hostname.lower() in self._live_hostnames:
            raise DuplicateHostname(f"Hostname {identity.hostname!r} is in use")
        if not verify_uuid(identity, pow_nonce, self.pow_threshold):
            raise PowInvalid(f"hash_uuid does not carry valid work for nonce {pow_nonce}")
        for record in identity.keys.values():
            if len(record.key_hash) != HASH_SIZE:
                raise InvalidIdentity(f"{record.role.label} key hash must be {HASH_SIZE} bytes")
            _check_window(record.valid_from, record.valid_until, self.max_key_lifetime)

        self.identities[identity.hash_m] = identity
        self._seen_uuids.add(identity.hash_uuid)
        self._live_hostnames[identity.hostname.lower()] = identity.hash_m
        return RegistrationReceipt(
            hash_m=identity.hash_m,
            hostname=identity.hostname,
            registered_at=identity.registered_at,
            key_contract_id=contract_id(KEY_CONTRACT_CODE, identity.hash_m),
            reputation_contract_id=contract_id(REPUTATION_CONTRACT_CODE, identity.hash_m),
        )

    def rotate_key(
        self,
        hash_m: bytes,
        role: KeyRole,
        new_key_hash: bytes,
        valid_from: int,
        valid_until: int,
    ) -> SecondaryKeyRecord:
        """Replace the active key for ``role``; the rotation tick is ``valid_from``."""
        identity = self.get(hash_m)
        if identity.revoked:
            raise MasterRevoked(f"Master key of {identity.hostname!r} is revoked")
        if len(new_key_hash) != HASH_SIZE:
            raise InvalidIdentity(f"Key hash must be {HASH_SIZE} bytes")
        _check_window(valid_from, valid_until, self.max_key_lifetime)
        current = identity.keys[role]
        if valid_from < current.valid_from:
            raise BadWindow(f"Rotation at {valid_from} predates the current key (from {current.valid_from})")

        current.superseded_at = valid_from
        current.valid_until = min(current.valid_until, valid_from)
        if current.revoked_at is not None:
            current.revoked_at = min(current.revoked_at, current.valid_until)
        identity.key_history.append(current)
        record = SecondaryKeyRecord(role=role, key_hash=new_key_hash, valid_from=valid_from, valid_until=valid_until)
        identity.keys[role] = record
        return record

    def revoke_key(self, hash_m: bytes, role: KeyRole, at: int) -> SecondaryKeyRecord:
        identity = self.get(hash_m)
        record = identity.keys[role]
        if identity.revoked or not record.is_valid_at(at):
            raise KeyNotActive(f"The {role.label} key of {identity.hostname!r} is not valid at tick {at}")
        record.revoked_at = at
        return record

    def revoke_master(self, hash_m: bytes, at: int) -> NodeIdentity:
        identity = self.get(hash_m)
        if identity.revoked:
            raise AlreadyRevoked(f"Master key of {identity.hostname!r} was revoked at tick {identity.revoked_at}")
        identity.revoked = True
        identity.revoked_at = at
        self._live_hostnames.pop(identity.hostname.lower(), None)
        return identity

    def is_key_valid(self, hash_m: bytes, role: KeyRole, at: int) -> bool:
        identity = self.identities.get(hash_m)
        if identity is None or identity.is_revoked_at(at):
            return False
        return any(record.is_valid_at(at) for record in identity.records(role))
