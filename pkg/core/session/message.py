"""消息帧与标签注册表。

帧格式：1 字节标签 + 4 字节大端负载长度 + 负载。
每个协议族在导入时登记自己的标签，解码遇到未登记标签即报错。
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from ..common.exceptions import ParameterError, PayloadError
from ..common.log import logger

HEADER = struct.Struct("!BI")
HEADER_SIZE = HEADER.size
MAX_PAYLOAD = 1 << 20


# region 标签注册
@dataclass(frozen=True, slots=True)
class TagInfo:
    tag: int
    name: str
    family: str
    description: str


_TAG_REGISTRY: dict[int, TagInfo] = {}


def register_tag(tag: int, name: str, family: str, description: str) -> TagInfo:
    if not 0 <= tag <= 0xFF:
        raise ParameterError(f"标签越界: {tag}")
    info = TagInfo(tag, name, family, description)
    existing = _TAG_REGISTRY.get(tag)
    if existing is not None and existing != info:
        raise ParameterError(
            f"标签 0x{tag:02x} 已被 {existing.family}/{existing.name} 占用"
        )
    _TAG_REGISTRY[tag] = info
    return info


def tag_info(tag: int) -> TagInfo | None:
    return _TAG_REGISTRY.get(tag)


def registered_tags() -> list[TagInfo]:
    return [_TAG_REGISTRY[t] for t in sorted(_TAG_REGISTRY)]


# endregion


# region 消息编解码
@dataclass(frozen=True, slots=True)
class Message:
    tag: int
    payload: bytes

    def __post_init__(self) -> None:
        if not 0 <= self.tag <= 0xFF:
            raise ParameterError(f"标签越界: {self.tag}")
        if len(self.payload) >= 1 << 32:
            raise ParameterError("负载长度超出 4 字节长度字段")

    @property
    def name(self) -> str:
        info = tag_info(self.tag)
        return info.name if info else f"0x{self.tag:02x}"


def encode_message(message: Message) -> bytes:
    return HEADER.pack(message.tag, len(message.payload)) + message.payload


def decode_header(header: bytes) -> tuple[int, int]:
    if len(header) < HEADER_SIZE:
        raise PayloadError(f"帧头截断: {len(header)} 字节")
    tag, size = HEADER.unpack(header[:HEADER_SIZE])
    if tag not in _TAG_REGISTRY:
        raise PayloadError(f"未知标签 0x{tag:02x}")
    if size > MAX_PAYLOAD:
        raise PayloadError(f"负载长度 {size} 超过上限 {MAX_PAYLOAD}")
    return tag, size


def decode_message(frame: bytes) -> Message:
    tag, size = decode_header(frame)
    body = frame[HEADER_SIZE:]
    if len(body) != size:
        logger.debug("❌ 帧长度不符: 声明 %d, 实际 %d", size, len(body))
        raise PayloadError(f"帧长度不符: 声明 {size} 字节, 实际 {len(body)} 字节")
    return Message(tag, bytes(body))


# endregion

__all__ = [
    "HEADER_SIZE",
    "MAX_PAYLOAD",
    "Message",
    "TagInfo",
    "decode_header",
    "decode_message",
    "encode_message",
    "register_tag",
    "registered_tags",
    "tag_info",
]
