import hashlib
import re

from batman.constants import HASH_SIZE

_RE_HASH_HEX = re.compile(r"^[0-9a-fA-F]{64}$")


def sha256(*parts: bytes) -> bytes:
    """Hash the concatenation of ``parts``. The one hash function used repo-wide."""
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
    return h.digest()


def hash_to_int(digest: bytes) -> int:
    """Interpret a digest as a big-endian unsigned integer."""
    return int.from_bytes(digest, "big")


def is_hash_hex(value: str) -> bool:
    return bool(_RE_HASH_HEX.match(value))


def parse_hash_hex(value: str) -> bytes:
    """Parse a 64 character hex string into a Hash256.

    Raises:
        ValueError: If the string is not exactly 32 bytes of hex.
    """
    value = value.strip()
    if not is_hash_hex(value):
        raise ValueError(f"Expected {HASH_SIZE * 2} hex characters, got {value!r}")
    return bytes.fromhex(value)


def short_hex(digest: bytes, length: int = 12) -> str:
    return digest.hex()[:length]
