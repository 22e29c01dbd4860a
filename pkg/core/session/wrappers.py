"""协议方脚本包装器。"""

from __future__ import annotations

import hashlib
from collections.abc import Callable

from ..common.log import logger
from .message import Message
from .party import PartyContext, PartyFactory, PartyScript, Recv, Send

AD_DIGEST_BYTES = 32


def substitute(
    factory: PartyFactory,
    label: str,
    replace: Callable[[Message, PartyContext], Message],
) -> PartyFactory:
    """作弊脚本：把标签为 label 的步骤发出的消息替换为 replace 的结果。"""

    def wrapped(ctx: PartyContext) -> PartyScript:
        script = factory(ctx)
        reply = None
        try:
            step = script.send(None)
            while True:
                if isinstance(step, Send) and step.label == label:
                    logger.debug("⚠️ %s 在 %s 替换消息", ctx.role, label)
                    step = Send(step.label, replace(step.message, ctx))
                reply = yield step
                step = script.send(reply)
        except StopIteration as stop:
            return stop.value

    return wrapped


def bind_associated_data(factory: PartyFactory, associated: bytes) -> PartyFactory:
    """每条发出的负载前加 sha256(associated)，每条收到的负载必须带同一摘要。"""
    digest = hashlib.sha256(associated).digest()

    def wrapped(ctx: PartyContext) -> PartyScript:
        script = factory(ctx)
        reply: Message | None = None
        try:
            step = script.send(None)
            while True:
                if isinstance(step, Send):
                    bound = Message(step.message.tag, digest + step.message.payload)
                    yield Send(step.label, bound)
                    step = script.send(None)
                    continue
                assert isinstance(step, Recv)
                raw = yield step
                if raw is None or raw.payload[:AD_DIGEST_BYTES] != digest:
                    ctx.fail(step.label.removeprefix(ctx.prefix), "关联数据（合同摘要）不匹配")
                reply = Message(raw.tag, raw.payload[AD_DIGEST_BYTES:])
                step = script.send(reply)
        except StopIteration as stop:
            return stop.value

    return wrapped


__all__ = ["bind_associated_data", "substitute"]
