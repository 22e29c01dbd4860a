"""会话记录与记录文件。

记录文件：首行 `# ` + 头部 JSON（msgspec），随后每条消息一行，
制表符分隔：会话 id（8 字节十六进制）、方向、步骤标签、标签（十六进制）、负载（十六进制）。
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import msgspec

from ..common.log import logger
from .errors import ROLE_A, ROLE_B, FramingError
from .message import Message, encode_message, tag_info

A_TO_B = "A->B"
B_TO_A = "B->A"
DIRECTIONS = (A_TO_B, B_TO_A)
SESSION_ID_BYTES = 8


def direction_of(sender: str) -> str:
    return A_TO_B if sender == ROLE_A else B_TO_A


def sender_of(direction: str) -> str:
    return ROLE_A if direction == A_TO_B else ROLE_B


def make_session_id(protocol: str, seed_a: int, seed_b: int) -> bytes:
    return hashlib.blake2b(
        f"{protocol}|{seed_a}|{seed_b}".encode(), digest_size=SESSION_ID_BYTES
    ).digest()


# region 记录
@dataclass(frozen=True, slots=True)
class TranscriptRecord:
    direction: str
    label: str
    message: Message


@dataclass(slots=True)
class Transcript:
    """只追加的消息记录。"""

    records: list[TranscriptRecord] = field(default_factory=list)

    def append(self, direction: str, label: str, message: Message) -> None:
        self.records.append(TranscriptRecord(direction, label, message))

    def __iter__(self) -> Iterator[TranscriptRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def from_sender(self, sender: str) -> list[TranscriptRecord]:
        direction = direction_of(sender)
        return [r for r in self.records if r.direction == direction]

    def serialize(self) -> bytes:
        return b"".join(
            r.direction.encode() + encode_message(r.message) for r in self.records
        )

    def labels(self) -> list[str]:
        return [r.label for r in self.records]


# endregion


# region 记录文件
class TranscriptHeader(msgspec.Struct, frozen=True):
    protocol: str
    seed_a: int
    seed_b: int
    records: int
    session_id: str
    run: dict[str, Any] = msgspec.field(default_factory=dict)


def format_log(header: TranscriptHeader, transcript: Transcript) -> str:
    lines = ["# " + msgspec.json.encode(header).decode()]
    for record in transcript:
        info = tag_info(record.message.tag)
        logger.debug(
            "📜 %s %s %s", record.direction, record.label, info.name if info else "?"
        )
        lines.append(
            "\t".join(
                (
                    header.session_id,
                    record.direction,
                    record.label,
                    f"{record.message.tag:02x}",
                    record.message.payload.hex(),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_log(path: Path, header: TranscriptHeader, transcript: Transcript) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_log(header, transcript), encoding="utf-8")
    logger.info("📜 会话记录已写入: %s (%d 条)", path, len(transcript))
    return path


def _log_error(line_no: int, reason: str) -> FramingError:
    return FramingError(f"line {line_no}", "log", reason)


def parse_log(text: str) -> tuple[TranscriptHeader, Transcript]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise _log_error(1, "缺少头部")
    try:
        header = msgspec.json.decode(lines[0][2:], type=TranscriptHeader)
    except msgspec.DecodeError as exc:
        raise _log_error(1, f"头部无法解析: {exc}") from exc

    transcript = Transcript()
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise _log_error(line_no, f"字段数 {len(fields)} != 5")
        session_id, direction, label, tag_hex, payload_hex = fields
        if session_id != header.session_id:
            raise _log_error(line_no, "会话 id 与头部不一致")
        if direction not in DIRECTIONS:
            raise _log_error(line_no, f"未知方向 {direction!r}")
        try:
            tag = int(tag_hex, 16)
            payload = bytes.fromhex(payload_hex)
        except ValueError as exc:
            raise _log_error(line_no, f"十六进制字段非法: {exc}") from exc
        if len(tag_hex) != 2 or tag_info(tag) is None:
            raise _log_error(line_no, f"未知标签 {tag_hex!r}")
        transcript.append(direction, label, Message(tag, payload))

    if len(transcript) != header.records:
        raise _log_error(
            len(lines), f"记录数 {len(transcript)} 与头部声明 {header.records} 不符"
        )
    return header, transcript


def read_log(path: Path) -> tuple[TranscriptHeader, Transcript]:
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise _log_error(0, f"文件不是 UTF-8 文本: {exc}") from exc
    return parse_log(text)


# endregion

__all__ = [
    "A_TO_B",
    "B_TO_A",
    "Transcript",
    "TranscriptHeader",
    "TranscriptRecord",
    "direction_of",
    "format_log",
    "make_session_id",
    "parse_log",
    "read_log",
    "sender_of",
    "write_log",
]
