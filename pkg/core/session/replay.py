"""离线重放。

replay_party：只用某一方的本地视图（输入、种子、收到的消息）重跑脚本，
重现其私有输出。
replay_transcript：双方各自用自己的种子重跑，喂入记录中对方发来的消息，
要求每条自己发出的消息与记录逐字节一致，所有验证步骤在记录的消息上重新执行。
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any

from ..common.exceptions import PayloadError, ProtocolError
from ..common.log import logger
from ..common.rng import RandomStream
from .errors import ROLE_A, ROLE_B, FramingError, SessionAbort, VerificationFailed
from .message import Message
from .party import PartyContext, PartyOutcome, ProtocolDefinition, Recv, Send
from .transcript import Transcript
from .transport import peer_of


# region 视图重放
def replay_party(protocol: ProtocolDefinition, outcome: PartyOutcome) -> Any:
    view = outcome.local_view
    ctx = PartyContext(view.role, view.input, RandomStream(view.seed))
    script = protocol.factory(view.role)(ctx)
    incoming = deque(message for _, message in view.incoming)
    reply: Message | None = None
    try:
        while True:
            step = script.send(reply)
            reply = None
            if isinstance(step, Recv):
                if not incoming:
                    raise FramingError(step.label, view.role, "视图中的消息不足")
                reply = incoming.popleft()
    except StopIteration as stop:
        return stop.value


# endregion


# region 会话记录重放
@dataclass(frozen=True, slots=True)
class ReplayIssue:
    kind: str
    party: str
    step: str
    reason: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.party} @ {self.step}: {self.reason}"


def _replay_one(
    protocol: ProtocolDefinition,
    role: str,
    party_input: Any,
    seed: int,
    transcript: Transcript,
) -> ReplayIssue | None:
    ctx = PartyContext(role, party_input, RandomStream(seed))
    script = protocol.factory(role)(ctx)
    outgoing = deque(transcript.from_sender(role))
    incoming = deque(transcript.from_sender(peer_of(role)))
    label = "start"
    reply: Message | None = None
    try:
        while True:
            step = script.send(reply)
            reply = None
            label = step.label
            if isinstance(step, Send):
                if not outgoing:
                    return ReplayIssue("framing", role, label, "记录被截断，缺少该步消息")
                record = outgoing.popleft()
                if record.label != step.label or record.message != step.message:
                    return ReplayIssue(
                        "verification",
                        role,
                        step.label,
                        f"记录中的消息与重算结果不一致（记录步骤 {record.label}）",
                    )
            else:
                if not incoming:
                    return ReplayIssue("framing", role, label, "记录被截断，缺少对方消息")
                record = incoming.popleft()
                if record.message.tag not in step.tags:
                    return ReplayIssue(
                        "framing", role, label, f"意外的消息类型 {record.message.name}"
                    )
                reply = record.message
    except StopIteration:
        pass
    except PayloadError as exc:
        return ReplayIssue("framing", role, label, str(exc))
    except SessionAbort as exc:
        return ReplayIssue(exc.kind, role, exc.step, exc.reason)
    except (ProtocolError, ValueError) as exc:
        return ReplayIssue("verification", role, label, f"记录中的消息无法处理: {exc}")

    if outgoing or incoming:
        return ReplayIssue("framing", role, "end", "记录中有多余的消息")
    return None


def replay_transcript(
    protocol: ProtocolDefinition,
    input_a: Any,
    input_b: Any,
    seed_a: int,
    seed_b: int,
    transcript: Transcript,
) -> list[ReplayIssue]:
    issues = []
    for role, party_input, seed in (
        (ROLE_A, input_a, seed_a),
        (ROLE_B, input_b, seed_b),
    ):
        issue = _replay_one(protocol, role, party_input, seed, transcript)
        if issue is not None:
            logger.warning("❌ 重放发现问题: %s", issue)
            issues.append(issue)
    if not issues:
        logger.info("📜 %s 会话记录重放通过: %d 条消息", protocol.name, len(transcript))
    return issues


def issue_to_abort(issue: ReplayIssue) -> SessionAbort:
    cls = VerificationFailed if issue.kind == "verification" else FramingError
    return cls(issue.step, issue.party, issue.reason)


# endregion

__all__ = ["ReplayIssue", "issue_to_abort", "replay_party", "replay_transcript"]
