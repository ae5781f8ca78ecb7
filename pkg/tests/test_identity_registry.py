import pytest

from batman.common.hashing import hash_to_int, sha256
from batman.constants import KEY_CONTRACT_CODE, REPUTATION_CONTRACT_CODE, UINT256_MAX
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
from batman.identity.registry import KeyGrant, KeyRole, NodeIdentity, Registry, contract_id
from batman.sybilguard.pow import uuid_hash


def make_identity(label: str, hostname: str, at: int = 0, lifetime: int = 1000, nonce: int = 0) -> NodeIdentity:
    hash_m = sha256(label.encode())
    grants = [KeyGrant(role, sha256(hash_m, bytes([role])), at, at + lifetime) for role in KeyRole]
    return NodeIdentity.create(hash_m, uuid_hash(hash_m, nonce), hostname, grants, at)


def make_registry(threshold: int = UINT256_MAX) -> Registry:
    return Registry(max_key_lifetime=2000, pow_threshold=threshold)


def test_register_emits_both_contracts() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a")

    receipt = registry.register_identity(identity, 0)

    assert identity.hash_m in registry
    assert receipt.key_contract_id == contract_id(KEY_CONTRACT_CODE, identity.hash_m)
    assert receipt.reputation_contract_id == contract_id(REPUTATION_CONTRACT_CODE, identity.hash_m)
    assert receipt.key_contract_id != receipt.reputation_contract_id
    for role in KeyRole:
        assert registry.is_key_valid(identity.hash_m, role, 0)


def test_register_twice_is_duplicate_identity() -> None:
    registry = make_registry()
    registry.register_identity(make_identity("a", "node-a"), 0)

    with pytest.raises(DuplicateIdentity):
        registry.register_identity(make_identity("a", "node-other"), 0)


def test_hostname_is_unique_ignoring_case() -> None:
    registry = make_registry()
    registry.register_identity(make_identity("a", "node-a"), 0)
    other = make_identity("b", "NODE-A")

    with pytest.raises(DuplicateHostname):
        registry.register_identity(other, 0)
    assert other.hash_m not in registry


def test_register_rejects_wrong_nonce_and_weak_work() -> None:
    registry = make_registry(threshold=1 << 255)
    hash_m = sha256(b"a")
    weak = next(n for n in range(1000) if hash_to_int(uuid_hash(hash_m, n)) > 1 << 255)

    with pytest.raises(PowInvalid):
        registry.register_identity(make_identity("a", "node-a", nonce=weak), weak)
    with pytest.raises(PowInvalid):
        registry.register_identity(make_identity("a", "node-a", nonce=weak), weak + 1)
    assert hash_m not in registry


def test_register_rejects_bad_windows() -> None:
    registry = make_registry()

    with pytest.raises(KeyLifetimeExceeded):
        registry.register_identity(make_identity("a", "node-a", lifetime=2001), 0)
    with pytest.raises(BadWindow):
        registry.register_identity(make_identity("a", "node-a", lifetime=0), 0)
    registry.register_identity(make_identity("a", "node-a", lifetime=2000), 0)


def test_register_rejects_malformed_identities() -> None:
    registry = make_registry()
    hash_m = sha256(b"a")
    grants = [KeyGrant(KeyRole.SIGNING, sha256(b"k"), 0, 10)]

    with pytest.raises(InvalidIdentity):
        NodeIdentity.create(hash_m, uuid_hash(hash_m, 0), "node-a", grants, 0)
    with pytest.raises(InvalidIdentity):
        NodeIdentity.create(hash_m, uuid_hash(hash_m, 0), "node-a", grants * 2, 0)
    with pytest.raises(InvalidIdentity):
        registry.register_identity(make_identity("a", "-bad-"), 0)
    with pytest.raises(InvalidIdentity):
        registry.register_identity(make_identity("a", "has.dot"), 0)


def test_key_validity_window_is_half_open() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a", at=10, lifetime=1000)
    registry.register_identity(identity, 0)

    assert not registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 9)
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 10)
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 1009)
    assert not registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 1010)


def test_rotation_supersedes_old_key_at_rotation_tick() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a")
    registry.register_identity(identity, 0)

    record = registry.rotate_key(identity.hash_m, KeyRole.SIGNING, sha256(b"new"), 500, 1500)

    old, new = list(identity.records(KeyRole.SIGNING))
    assert new is record
    assert old.valid_until == 500
    assert old.superseded_at == 500
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 499)
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 500)
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 1499)
    assert not registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 1500)
    # other roles are untouched
    assert registry.is_key_valid(identity.hash_m, KeyRole.ENCRYPTION, 999)


def test_rotation_checks_window_and_master() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a", at=100)
    registry.register_identity(identity, 0)

    with pytest.raises(KeyLifetimeExceeded):
        registry.rotate_key(identity.hash_m, KeyRole.SIGNING, sha256(b"new"), 200, 2201)
    with pytest.raises(BadWindow):
        registry.rotate_key(identity.hash_m, KeyRole.SIGNING, sha256(b"new"), 50, 150)
    with pytest.raises(UnknownIdentity):
        registry.rotate_key(sha256(b"nobody"), KeyRole.SIGNING, sha256(b"new"), 200, 300)

    registry.revoke_master(identity.hash_m, 300)
    with pytest.raises(MasterRevoked):
        registry.rotate_key(identity.hash_m, KeyRole.SIGNING, sha256(b"new"), 400, 500)


def test_revoke_key_then_rotate() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a")
    registry.register_identity(identity, 0)

    registry.revoke_key(identity.hash_m, KeyRole.SIGNING, 700)
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 699)
    assert not registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 700)
    with pytest.raises(KeyNotActive):
        registry.revoke_key(identity.hash_m, KeyRole.SIGNING, 750)

    registry.rotate_key(identity.hash_m, KeyRole.SIGNING, sha256(b"new"), 800, 1800)
    assert not registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 799)
    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 800)


def test_revoke_key_outside_window() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a", lifetime=100)
    registry.register_identity(identity, 0)

    with pytest.raises(KeyNotActive):
        registry.revoke_key(identity.hash_m, KeyRole.AUTHENTICATION, 100)


def test_revoke_master_invalidates_keys_from_then_on() -> None:
    registry = make_registry()
    identity = make_identity("a", "node-a")
    registry.register_identity(identity, 0)

    registry.revoke_master(identity.hash_m, 900)

    assert registry.is_key_valid(identity.hash_m, KeyRole.SIGNING, 899)
    for role in KeyRole:
        assert not registry.is_key_valid(identity.hash_m, role, 900)
    with pytest.raises(AlreadyRevoked):
        registry.revoke_master(identity.hash_m, 950)
    with pytest.raises(KeyNotActive):
        registry.revoke_key(identity.hash_m, KeyRole.SIGNING, 800)


def test_hostname_is_released_by_master_revocation() -> None:
    registry = make_registry()
    first = make_identity("a", "node-a")
    registry.register_identity(first, 0)
    registry.revoke_master(first.hash_m, 10)

    second = make_identity("b", "node-a", at=20)
    registry.register_identity(second, 0)

    assert registry.lookup_hostname("Node-A") is second
    with pytest.raises(DuplicateIdentity):
        registry.register_identity(make_identity("a", "node-c"), 0)


def test_unknown_identities() -> None:
    registry = make_registry()
    nobody = sha256(b"nobody")

    assert not registry.is_key_valid(nobody, KeyRole.SIGNING, 0)
    with pytest.raises(UnknownIdentity):
        registry.revoke_key(nobody, KeyRole.SIGNING, 0)
    with pytest.raises(UnknownIdentity):
        registry.revoke_master(nobody, 0)
    with pytest.raises(UnknownIdentity):
        registry.lookup_hostname("node-x")
