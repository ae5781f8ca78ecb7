"""Proof of work on hash_uuid.

A uuid is ``seed ‖ nonce`` with the nonce as 8 little-endian bytes, and the
seed is the identity's master key hash, so work cannot be reused across
identities. The work is accepted when sha256(uuid) read as a big-endian
integer is at most the threshold.
"""

from typing import Protocol

import msgspec

from batman.common.hashing import hash_to_int, sha256
from batman.constants import UINT256_MAX
from batman.errors import Exhausted

NONCE_SIZE = 8


class PowClaim(Protocol):
    @property
    def hash_m(self) -> bytes: ...

    @property
    def hash_uuid(self) -> bytes: ...


class UuidClaim(msgspec.Struct, frozen=True):
    """A hash_uuid claimed for a master key hash, checked without a registry."""

    hash_m: bytes
    hash_uuid: bytes


class MinedUuid(msgspec.Struct, frozen=True):
    uuid: bytes
    nonce: int
    hash_uuid: bytes

    @property
    def iterations(self) -> int:
        return self.nonce + 1


def threshold_for_bits(difficulty_bits: int) -> int:
    """Threshold admitting roughly 1 / 2**difficulty_bits of all hashes."""
    if not 0 <= difficulty_bits <= 256:
        raise ValueError("difficulty_bits must lie in [0, 256]")
    return min(1 << (256 - difficulty_bits), UINT256_MAX)


def _check_threshold(threshold: int) -> None:
    if not 0 <= threshold <= UINT256_MAX:
        raise ValueError("threshold must be a 256-bit unsigned integer")


def make_uuid(seed: bytes, nonce: int) -> bytes:
    return seed + nonce.to_bytes(NONCE_SIZE, "little")


def uuid_hash(seed: bytes, nonce: int) -> bytes:
    return sha256(make_uuid(seed, nonce))


def mine_uuid(seed: bytes, threshold: int, max_iters: int, start_nonce: int = 0) -> MinedUuid:
    """Search nonces start_nonce, start_nonce + 1, ... for a hash under the threshold.

    Args:
        seed: Bytes the work is bound to (the master key hash).
        threshold: Maximum admissible numeric value of the hash.
        max_iters: Number of nonces to try before giving up.
        start_nonce: First nonce, so callers can shard ranges across workers.

    Returns:
        The first passing uuid and its nonce.

    Raises:
        Exhausted: If no nonce in the range passes.
    """
    _check_threshold(threshold)
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")

    for nonce in range(start_nonce, start_nonce + max_iters):
        digest = uuid_hash(seed, nonce)
        if hash_to_int(digest) <= threshold:
            return MinedUuid(uuid=make_uuid(seed, nonce), nonce=nonce, hash_uuid=digest)

    raise Exhausted(f"No nonce in [{start_nonce}, {start_nonce + max_iters}) meets the threshold", max_iters)


def verify_uuid(identity: PowClaim, nonce: int, threshold: int) -> bool:
    """Check the identity's hash_uuid is the work for its master key hash. One hash, whatever the threshold."""
    _check_threshold(threshold)
    if not 0 <= nonce < 1 << (8 * NONCE_SIZE):
        return False
    digest = uuid_hash(identity.hash_m, nonce)
    return digest == identity.hash_uuid and hash_to_int(digest) <= threshold
