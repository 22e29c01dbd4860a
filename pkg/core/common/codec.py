"""负载编解码。

整数：2 字节大端长度前缀 + 大端无符号数值（0 编码为空数值），不允许前导零字节。
负载内其余字段由 PayloadReader 顺序读取，读完后必须恰好耗尽。
"""

from __future__ import annotations

import struct

from .exceptions import ParameterError, PayloadError

_U8 = struct.Struct("!B")
_U16 = struct.Struct("!H")
MAX_INT_BYTES = 0xFFFF


def encode_int(value: int) -> bytes:
    if value < 0:
        raise ParameterError(f"无法编码负整数: {value}")
    size = (value.bit_length() + 7) // 8
    if size > MAX_INT_BYTES:
        raise ParameterError("整数超出编码长度上限")
    return _U16.pack(size) + value.to_bytes(size, "big")


def encode_ints(*values: int) -> bytes:
    return b"".join(encode_int(v) for v in values)


def encode_u8(value: int) -> bytes:
    if not 0 <= value <= 0xFF:
        raise ParameterError(f"u8 越界: {value}")
    return _U8.pack(value)


def encode_u16(value: int) -> bytes:
    if not 0 <= value <= 0xFFFF:
        raise ParameterError(f"u16 越界: {value}")
    return _U16.pack(value)


class PayloadReader:
    """按顺序读取负载字段。"""

    __slots__ = ("_data", "_offset")

    def __init__(self, data: bytes):
        self._data = bytes(data)
        self._offset = 0

    @property
    def remaining(self) -> int:
        return len(self._data) - self._offset

    def read_bytes(self, size: int) -> bytes:
        if size < 0 or self.remaining < size:
            raise PayloadError(
                f"负载截断: 需要 {size} 字节, 剩余 {self.remaining} 字节"
            )
        chunk = self._data[self._offset : self._offset + size]
        self._offset += size
        return chunk

    def read_u8(self) -> int:
        return _U8.unpack(self.read_bytes(1))[0]

    def read_u16(self) -> int:
        return _U16.unpack(self.read_bytes(2))[0]

    def read_int(self) -> int:
        size = self.read_u16()
        raw = self.read_bytes(size)
        if raw[:1] == b"\x00":
            raise PayloadError("整数编码含前导零")
        return int.from_bytes(raw, "big")

    def read_ints(self, count: int) -> tuple[int, ...]:
        return tuple(self.read_int() for _ in range(count))

    def finish(self) -> None:
        if self.remaining:
            raise PayloadError(f"负载尾部多余 {self.remaining} 字节")


def decode_ints(payload: bytes, count: int) -> tuple[int, ...]:
    reader = PayloadReader(payload)
    values = reader.read_ints(count)
    reader.finish()
    return values


__all__ = [
    "MAX_INT_BYTES",
    "PayloadReader",
    "decode_ints",
    "encode_int",
    "encode_ints",
    "encode_u16",
    "encode_u8",
]
