"""Canonical binary encoding.

Fixed field order, little-endian integers, u32 length-prefixed byte strings.
Decoding is strict: every accepted input re-encodes to the same bytes, so a
mutated encoding either fails to decode or hashes differently.
"""

import struct

from batman.constants import HASH_SIZE
from batman.errors import CodecError

_U8 = struct.Struct("<B")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")


def _pack(fmt: struct.Struct, value: int) -> bytes:
    try:
        return fmt.pack(value)
    except struct.error as e:
        raise CodecError(f"Cannot encode {value!r}: {e}") from e


class Encoder:
    def __init__(self) -> None:
        self._buf = bytearray()

    def u8(self, value: int) -> "Encoder":
        self._buf += _pack(_U8, value)
        return self

    def u32(self, value: int) -> "Encoder":
        self._buf += _pack(_U32, value)
        return self

    def u64(self, value: int) -> "Encoder":
        self._buf += _pack(_U64, value)
        return self

    def boolean(self, value: bool) -> "Encoder":
        return self.u8(1 if value else 0)

    def hash256(self, value: bytes) -> "Encoder":
        if len(value) != HASH_SIZE:
            raise CodecError(f"Hash must be {HASH_SIZE} bytes, got {len(value)}")
        self._buf += value
        return self

    def blob(self, value: bytes) -> "Encoder":
        self.u32(len(value))
        self._buf += value
        return self

    def text(self, value: str) -> "Encoder":
        return self.blob(value.encode("utf-8"))

    def optional_u64(self, value: int | None) -> "Encoder":
        if value is None:
            return self.u8(0)
        return self.u8(1).u64(value)

    def getvalue(self) -> bytes:
        return bytes(self._buf)


class Decoder:
    def __init__(self, data: bytes) -> None:
        self._data = memoryview(data)
        self._pos = 0

    def _take(self, size: int) -> bytes:
        end = self._pos + size
        if end > len(self._data):
            raise CodecError(f"Truncated input: wanted {size} bytes at offset {self._pos}")
        chunk = bytes(self._data[self._pos : end])
        self._pos = end
        return chunk

    def u8(self) -> int:
        return _U8.unpack(self._take(1))[0]

    def u32(self) -> int:
        return _U32.unpack(self._take(4))[0]

    def u64(self) -> int:
        return _U64.unpack(self._take(8))[0]

    def boolean(self) -> bool:
        value = self.u8()
        if value not in (0, 1):
            raise CodecError(f"Invalid boolean byte {value}")
        return value == 1

    def hash256(self) -> bytes:
        return self._take(HASH_SIZE)

    def blob(self) -> bytes:
        return self._take(self.u32())

    def text(self) -> str:
        try:
            return self.blob().decode("utf-8")
        except UnicodeDecodeError as e:
            raise CodecError(f"Invalid UTF-8: {e}") from e

    def optional_u64(self) -> int | None:
        if self.boolean():
            return self.u64()
        return None

    def finish(self) -> None:
        if self._pos != len(self._data):
            raise CodecError(f"{len(self._data) - self._pos} trailing bytes")
