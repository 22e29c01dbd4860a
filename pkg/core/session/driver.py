"""双方会话驱动。

流程：
1. 为双方各建一个 PartyContext（各自的种子与随机流），启动脚本；
2. 循环：先按 A、B 顺序冲刷所有待发消息（记入会话记录），
   再为等待中的一方投递一帧并校验标签；
3. 双方结束时检查无遗留消息；无进展即判定死锁；
4. 协议方抛出的 SessionAbort / PayloadError 被收集进 SessionResult.abort。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..common.exceptions import PayloadError
from ..common.log import logger
from ..common.rng import RandomStream
from .errors import ROLE_A, ROLE_B, DeadlockError, FramingError, SessionAbort
from .message import Message, decode_message, encode_message
from .party import (
    LocalView,
    PartyContext,
    PartyFactory,
    PartyOutcome,
    ProtocolDefinition,
    Recv,
    Send,
)
from .transcript import Transcript, direction_of, make_session_id
from .transport import Transport, open_transport


# region 会话结果
@dataclass(frozen=True, slots=True)
class SessionResult:
    protocol: str
    session_id: bytes
    outcome_a: PartyOutcome | None
    outcome_b: PartyOutcome | None
    transcript: Transcript
    abort: SessionAbort | None = None

    @property
    def ok(self) -> bool:
        return self.abort is None

    def outcome(self, role: str) -> PartyOutcome | None:
        return self.outcome_a if role == ROLE_A else self.outcome_b

    @property
    def outputs(self) -> tuple[Any, Any]:
        return (
            self.outcome_a.private_output if self.outcome_a else None,
            self.outcome_b.private_output if self.outcome_b else None,
        )

    def raise_for_abort(self) -> SessionResult:
        if self.abort is not None:
            raise self.abort
        return self


# endregion


# region 协议方执行器
class PartyRunner:
    """推进单个协议方脚本，记录它看到的全部输入。"""

    def __init__(self, role: str, factory: PartyFactory, party_input: Any, seed: int):
        self.role = role
        self.seed = seed
        self.ctx = PartyContext(role, party_input, RandomStream(seed))
        self.script = factory(self.ctx)
        self.step: Send | Recv | None = None
        self.done = False
        self.output: Any = None
        self.incoming: list[tuple[str, Message]] = []
        self.current_label = "start"

    def advance(self, reply: Message | None) -> None:
        try:
            step = self.script.send(reply)
        except StopIteration as stop:
            self.done = True
            self.step = None
            self.output = stop.value
            return
        except PayloadError as exc:
            raise FramingError(self.current_label, self.role, str(exc)) from exc
        self.step = step
        self.current_label = step.label

    def deliver(self, message: Message) -> None:
        assert isinstance(self.step, Recv)
        if message.tag not in self.step.tags:
            raise FramingError(
                self.step.label, self.role, f"意外的消息类型 {message.name}"
            )
        self.incoming.append((self.step.label, message))
        self.advance(message)

    def view(self) -> LocalView:
        return LocalView(
            self.role,
            self.ctx.input,
            self.seed,
            tuple(self.incoming),
            dict(self.ctx.notes),
        )

    def outcome(self) -> PartyOutcome:
        return PartyOutcome(self.output, self.view())


def _drive(runners: tuple[PartyRunner, PartyRunner], transport: Transport, transcript: Transcript) -> None:
    for runner in runners:
        runner.advance(None)

    while True:
        progressed = False
        for runner in runners:
            while isinstance(runner.step, Send):
                step = runner.step
                transport.send(runner.role, encode_message(step.message))
                transcript.append(direction_of(runner.role), step.label, step.message)
                logger.debug(
                    "🔐 %s 发送 %s [%s] %d 字节",
                    runner.role,
                    step.label,
                    step.message.name,
                    len(step.message.payload),
                )
                runner.advance(None)
                progressed = True

        for runner in runners:
            if isinstance(runner.step, Recv) and transport.pending(runner.role):
                label = runner.step.label
                try:
                    message = decode_message(transport.recv(runner.role))
                except PayloadError as exc:
                    raise FramingError(label, runner.role, str(exc)) from exc
                runner.deliver(message)
                progressed = True

        if all(r.done for r in runners):
            for runner in runners:
                if transport.pending(runner.role):
                    raise FramingError(
                        "end", runner.role, "会话结束时仍有未读取的消息"
                    )
            return

        if not progressed:
            waiting = [r for r in runners if not r.done]
            raise DeadlockError(
                waiting[0].current_label,
                "/".join(r.role for r in waiting),
                "双方都在等待消息",
            )


# endregion


def run_session(
    protocol: ProtocolDefinition,
    input_a: Any,
    input_b: Any,
    seed_a: int,
    seed_b: int,
    *,
    transport: str = "inproc",
    session_id: bytes | None = None,
) -> SessionResult:
    """运行一次会话；相同 (输入, 种子) 产生逐字节相同的会话记录。"""
    sid = session_id or make_session_id(protocol.name, seed_a, seed_b)
    runner_a = PartyRunner(ROLE_A, protocol.party_a, input_a, seed_a)
    runner_b = PartyRunner(ROLE_B, protocol.party_b, input_b, seed_b)
    transcript = Transcript()
    abort: SessionAbort | None = None

    with open_transport(transport) as channel:
        try:
            _drive((runner_a, runner_b), channel, transcript)
        except SessionAbort as exc:
            abort = exc
            logger.warning(
                "❌ %s 会话中止 (%s): %s", protocol.name, exc.kind, exc
            )

    if abort is not None:
        return SessionResult(protocol.name, sid, None, None, transcript, abort)

    logger.debug(
        "🔐 %s 会话完成: %d 条消息", protocol.name, len(transcript)
    )
    return SessionResult(
        protocol.name, sid, runner_a.outcome(), runner_b.outcome(), transcript
    )


__all__ = ["PartyRunner", "SessionResult", "run_session"]
