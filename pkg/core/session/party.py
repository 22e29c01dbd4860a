"""协议方脚本与协议定义。

协议方是生成器：yield Send 发出消息，yield Recv 等待消息并取得 Message；
子协议通过 `yield from` 组合，标签自动加上前缀。
协议方只能接触自己的 PartyContext（输入、随机流、笔记），
对方的随机流在接口上不可达。
"""

from __future__ import annotations

import dataclasses
from collections.abc import Callable, Generator, Mapping
from dataclasses import dataclass, field
from typing import Any, NoReturn, TypeAlias

from ..common.rng import RandomStream
from .errors import VerificationFailed
from .message import Message


# region 步骤原语
@dataclass(frozen=True, slots=True)
class Send:
    label: str
    message: Message


@dataclass(frozen=True, slots=True)
class Recv:
    label: str
    tags: tuple[int, ...]


Step: TypeAlias = Send | Recv
PartyScript: TypeAlias = Generator[Step, Message | None, Any]
# endregion


# region 上下文
@dataclass(slots=True)
class PartyContext:
    role: str
    input: Any
    rng: RandomStream
    notes: dict[str, Any] = field(default_factory=dict)
    prefix: str = ""

    def label(self, name: str) -> str:
        return f"{self.prefix}{name}"

    def send(self, label: str, tag: int, payload: bytes) -> Send:
        return Send(self.label(label), Message(tag, payload))

    def recv(self, label: str, *tags: int) -> Recv:
        return Recv(self.label(label), tags)

    def fail(self, label: str, reason: str) -> NoReturn:
        raise VerificationFailed(self.label(label), self.role, reason)

    def remember(self, key: str, value: Any) -> None:
        self.notes[self.label(key)] = value

    def recall(self, key: str, default: Any = None) -> Any:
        return self.notes.get(self.label(key), default)

    def sub(self, prefix: str, input: Any = None) -> PartyContext:
        """子协议上下文：共享随机流与笔记，标签加前缀。"""
        return dataclasses.replace(self, input=input, prefix=f"{self.prefix}{prefix}")


PartyFactory: TypeAlias = Callable[[PartyContext], PartyScript]
# endregion


# region 视图与结果
@dataclass(frozen=True, slots=True)
class LocalView:
    role: str
    input: Any
    seed: int
    incoming: tuple[tuple[str, Message], ...]
    notes: Mapping[str, Any]


@dataclass(frozen=True, slots=True)
class PartyOutcome:
    private_output: Any
    local_view: LocalView


# endregion


# region 协议定义
@dataclass(frozen=True, slots=True)
class ProtocolDefinition:
    """一个可运行的双方协议。

    output_domains 为双方公开的输出描述；expected 由双方真实输入
    与随机选择（笔记）计算函数 f 的期望输出。
    """

    name: str
    family: str
    description: str
    party_a: PartyFactory
    party_b: PartyFactory
    tags: Mapping[int, str]
    output_domains: tuple[str, str]
    expected: Callable[[LocalView, LocalView], tuple[Any, Any]] | None = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def factory(self, role: str) -> PartyFactory:
        return self.party_a if role == "A" else self.party_b

    def with_parties(
        self,
        *,
        party_a: PartyFactory | None = None,
        party_b: PartyFactory | None = None,
        name: str | None = None,
    ) -> ProtocolDefinition:
        """替换某一方脚本（作弊脚本测试用）。"""
        return dataclasses.replace(
            self,
            name=name or self.name,
            party_a=party_a or self.party_a,
            party_b=party_b or self.party_b,
        )


# endregion

__all__ = [
    "LocalView",
    "PartyContext",
    "PartyFactory",
    "PartyOutcome",
    "PartyScript",
    "ProtocolDefinition",
    "Recv",
    "Send",
    "Step",
]
