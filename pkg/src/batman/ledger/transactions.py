"""Transactions, their contract-operation payloads and the canonical codec.

Every payload starts with a one-byte tag. Field order is fixed, integers are
little-endian and byte strings are u32 length-prefixed (see
``batman.common.codec``).
"""

from collections.abc import Callable
from typing import Any

import msgspec

from batman.common.codec import Decoder, Encoder
from batman.common.hashing import short_hex
from batman.errors import CodecError
from batman.identity.registry import KeyGrant, KeyRole


class RegisterIdentity(msgspec.Struct, frozen=True, tag="register"):
    hash_m: bytes
    hash_uuid: bytes
    hostname: str
    pow_nonce: int
    keys: tuple[KeyGrant, ...]


class RotateKey(msgspec.Struct, frozen=True, tag="rotate"):
    hash_m: bytes
    role: KeyRole
    key_hash: bytes
    valid_from: int
    valid_until: int


class RevokeKey(msgspec.Struct, frozen=True, tag="revoke_key"):
    hash_m: bytes
    role: KeyRole


class RevokeMaster(msgspec.Struct, frozen=True, tag="revoke_master"):
    hash_m: bytes


class Endorse(msgspec.Struct, frozen=True, tag="endorse"):
    signer: bytes
    subject: bytes


class RecordEvent(msgspec.Struct, frozen=True, tag="event"):
    node: bytes
    outcome: int


Payload = RegisterIdentity | RotateKey | RevokeKey | RevokeMaster | Endorse | RecordEvent


class Transaction(msgspec.Struct, frozen=True):
    seq: int
    # tick at which the operation takes effect
    timestamp: int
    payload: Payload
    author: bytes


def _role(dec: Decoder) -> KeyRole:
    value = dec.u8()
    try:
        return KeyRole(value)
    except ValueError:
        raise CodecError(f"Unknown key role {value}") from None


def _encode_grant(enc: Encoder, grant: KeyGrant) -> None:
    enc.u8(grant.role).hash256(grant.key_hash).u64(grant.valid_from).u64(grant.valid_until)


def _decode_grant(dec: Decoder) -> KeyGrant:
    return KeyGrant(role=_role(dec), key_hash=dec.hash256(), valid_from=dec.u64(), valid_until=dec.u64())


def _encode_register(enc: Encoder, p: RegisterIdentity) -> None:
    enc.hash256(p.hash_m).hash256(p.hash_uuid).text(p.hostname).u64(p.pow_nonce).u32(len(p.keys))
    for grant in p.keys:
        _encode_grant(enc, grant)


def _decode_register(dec: Decoder) -> RegisterIdentity:
    hash_m, hash_uuid, hostname, pow_nonce = dec.hash256(), dec.hash256(), dec.text(), dec.u64()
    keys = tuple(_decode_grant(dec) for _ in range(dec.u32()))
    return RegisterIdentity(hash_m=hash_m, hash_uuid=hash_uuid, hostname=hostname, pow_nonce=pow_nonce, keys=keys)


def _encode_rotate(enc: Encoder, p: RotateKey) -> None:
    enc.hash256(p.hash_m).u8(p.role).hash256(p.key_hash).u64(p.valid_from).u64(p.valid_until)


def _decode_rotate(dec: Decoder) -> RotateKey:
    return RotateKey(
        hash_m=dec.hash256(), role=_role(dec), key_hash=dec.hash256(), valid_from=dec.u64(), valid_until=dec.u64()
    )


def _encode_event(enc: Encoder, p: RecordEvent) -> None:
    enc.hash256(p.node).u8(p.outcome)


def _decode_event(dec: Decoder) -> RecordEvent:
    node = dec.hash256()
    # outcomes are a single bit on the wire
    return RecordEvent(node=node, outcome=int(dec.boolean()))


_Codec = tuple[type, Callable[[Encoder, Any], object], Callable[[Decoder], Any]]

# tag byte -> payload type and its field codec
PAYLOAD_CODECS: dict[int, _Codec] = {
    1: (RegisterIdentity, _encode_register, _decode_register),
    2: (RotateKey, _encode_rotate, _decode_rotate),
    3: (
        RevokeKey,
        lambda enc, p: enc.hash256(p.hash_m).u8(p.role),
        lambda dec: RevokeKey(hash_m=dec.hash256(), role=_role(dec)),
    ),
    4: (RevokeMaster, lambda enc, p: enc.hash256(p.hash_m), lambda dec: RevokeMaster(hash_m=dec.hash256())),
    5: (
        Endorse,
        lambda enc, p: enc.hash256(p.signer).hash256(p.subject),
        lambda dec: Endorse(signer=dec.hash256(), subject=dec.hash256()),
    ),
    6: (RecordEvent, _encode_event, _decode_event),
}
_TAGS: dict[type, int] = {codec[0]: tag for tag, codec in PAYLOAD_CODECS.items()}


def encode_payload(enc: Encoder, payload: Payload) -> Encoder:
    try:
        tag = _TAGS[type(payload)]
    except KeyError:
        raise CodecError(f"Unsupported payload {type(payload).__name__}") from None
    PAYLOAD_CODECS[tag][1](enc.u8(tag), payload)
    return enc


def decode_payload(dec: Decoder) -> Payload:
    tag = dec.u8()
    if tag not in PAYLOAD_CODECS:
        raise CodecError(f"Unknown payload tag {tag}")
    return PAYLOAD_CODECS[tag][2](dec)


def encode_transaction(enc: Encoder, tx: Transaction) -> Encoder:
    enc.u64(tx.seq).u64(tx.timestamp).hash256(tx.author)
    return encode_payload(enc, tx.payload)


def decode_transaction(dec: Decoder) -> Transaction:
    seq, timestamp, author = dec.u64(), dec.u64(), dec.hash256()
    return Transaction(seq=seq, timestamp=timestamp, payload=decode_payload(dec), author=author)


def transaction_to_bytes(tx: Transaction) -> bytes:
    return encode_transaction(Encoder(), tx).getvalue()


def transaction_from_bytes(data: bytes) -> Transaction:
    dec = Decoder(data)
    tx = decode_transaction(dec)
    dec.finish()
    return tx


def describe_payload(payload: Payload) -> str:
    """Short human readable form used by ``ledger show``."""
    match payload:
        case RegisterIdentity():
            return f"register {payload.hostname} {short_hex(payload.hash_m)}"
        case RotateKey():
            return f"rotate {payload.role.label} [{payload.valid_from}, {payload.valid_until})"
        case RevokeKey():
            return f"revoke-key {payload.role.label}"
        case RevokeMaster():
            return f"revoke-master {short_hex(payload.hash_m)}"
        case Endorse():
            return f"endorse {short_hex(payload.signer)} -> {short_hex(payload.subject)}"
        case RecordEvent():
            return f"event {short_hex(payload.node)} outcome={payload.outcome}"
