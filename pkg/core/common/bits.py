"""定长比特串。"""

from __future__ import annotations

from dataclasses import dataclass

from .codec import PayloadReader, encode_u16
from .exceptions import ParameterError, PayloadError
from .rng import RandomStream


@dataclass(frozen=True, slots=True)
class BitString:
    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ParameterError(f"比特串长度非法: {self.length}")
        if self.value < 0 or self.value >> self.length:
            raise ParameterError(
                f"数值 {self.value} 超出 {self.length} 位比特串范围"
            )

    @classmethod
    def from_str(cls, text: str) -> BitString:
        text = text.strip()
        if text and set(text) - {"0", "1"}:
            raise ParameterError(f"比特串只能包含 0/1: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def from_int(cls, value: int, length: int) -> BitString:
        return cls(value, length)

    @classmethod
    def random(cls, length: int, rng: RandomStream) -> BitString:
        return cls(rng.getrandbits(length), length)

    @classmethod
    def zeros(cls, length: int) -> BitString:
        return cls(0, length)

    def bit(self, index: int) -> int:
        """第 index 位，0 为最高位（字符串最左侧）。"""
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.value >> (self.length - 1 - index)) & 1

    def __xor__(self, other: BitString) -> BitString:
        if not isinstance(other, BitString):
            return NotImplemented
        if other.length != self.length:
            raise ParameterError(
                f"比特串长度不一致: {self.length} != {other.length}"
            )
        return BitString(self.value ^ other.value, self.length)

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def encode(self) -> bytes:
        size = (self.length + 7) // 8
        return encode_u16(self.length) + self.value.to_bytes(size, "big")

    @classmethod
    def read(cls, reader: PayloadReader) -> BitString:
        length = reader.read_u16()
        raw = reader.read_bytes((length + 7) // 8)
        value = int.from_bytes(raw, "big")
        if value >> length:
            raise PayloadError("比特串数值超出声明长度")
        return cls(value, length)


def xor_all(items: list[BitString], length: int) -> BitString:
    acc = BitString.zeros(length)
    for item in items:
        acc = acc ^ item
    return acc


def low_bits(value: int, k: int) -> BitString:
    return BitString(value & ((1 << k) - 1), k)


__all__ = ["BitString", "low_bits", "xor_all"]
