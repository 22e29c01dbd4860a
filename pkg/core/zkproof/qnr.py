"""二次非剩余的交互证明。

流程：
1. 公开 (N, y)，y 的 Jacobi 符号为 1；
2. 每轮验证方取随机 b 与 r，发送 w ≡ r²·y^b；
3. 知道 p, q 的证明方判断 w 是否为二次剩余，回答 b；
4. 回答正确则本轮通过。y 实为剩余时 w 与 b 无关，每轮只有 1/2 机会蒙对。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..common.codec import PayloadReader, encode_int, encode_ints, encode_u8
from ..numtheory import BlumModulus, is_qr, sample_unit
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags
from .rounds import DEFAULT_ROUNDS, STEP_SETUP, STEP_VERDICT, ZkVerdict, check_rounds

STEP_QUERY = "Challenge"
STEP_ANSWER = "Response"


@dataclass(frozen=True, slots=True)
class QnrInstance:
    modulus: BlumModulus
    y: int


def qnr_prover(ctx: PartyContext, modulus: BlumModulus, m: int) -> PartyScript:
    """对验证方送来的任何 w 都如实回答其剩余性。

    验证方不证明自己知道 r，作弊的验证方可把证明方当作二次剩余判定谕言；
    只对诚实验证方是零知识的。
    """
    n = modulus.modulus
    for t in range(m):
        label = f"{STEP_QUERY}[{t}]"
        message = yield ctx.recv(label, tags.ZK_QNR_QUERY)
        reader = PayloadReader(message.payload)
        if reader.read_u8() != t:
            ctx.fail(label, f"轮号与第 {t} 轮不符")
        w = reader.read_int()
        reader.finish()
        if not 0 < w < n or math.gcd(w, n) != 1:
            ctx.fail(label, "w 不在 Z_N* 中")
        answer = 0 if is_qr(w, modulus) else 1
        yield ctx.send(f"{STEP_ANSWER}[{t}]", tags.ZK_QNR_ANSWER, encode_u8(t) + encode_u8(answer))

    message = yield ctx.recv(STEP_VERDICT, tags.ZK_VERDICT)
    return ZkVerdict.decode(message.payload)


def qnr_verifier(ctx: PartyContext, n: int, y: int, m: int) -> PartyScript:
    results = []
    for t in range(m):
        b = ctx.rng.bit()
        r = sample_unit(n, ctx.rng)
        ctx.remember(f"b[{t}]", b)
        w = r * r * pow(y, b, n) % n
        yield ctx.send(f"{STEP_QUERY}[{t}]", tags.ZK_QNR_QUERY, encode_u8(t) + encode_int(w))

        label = f"{STEP_ANSWER}[{t}]"
        message = yield ctx.recv(label, tags.ZK_QNR_ANSWER)
        reader = PayloadReader(message.payload)
        if reader.read_u8() != t:
            ctx.fail(label, f"轮号与第 {t} 轮不符")
        answer = reader.read_u8()
        reader.finish()
        results.append(answer == b)

    verdict = ZkVerdict.from_results(tuple(results))
    yield ctx.send(STEP_VERDICT, tags.ZK_VERDICT, verdict.encode())
    return verdict


def _party_a(m: int):
    def party(ctx: PartyContext) -> PartyScript:
        instance: QnrInstance = ctx.input
        payload = encode_ints(instance.modulus.modulus, instance.y) + encode_u8(m)
        yield ctx.send(STEP_SETUP, tags.ZK_SETUP, payload)
        return (yield from qnr_prover(ctx, instance.modulus, m))

    return party


def _party_b(m: int):
    def party(ctx: PartyContext) -> PartyScript:
        message = yield ctx.recv(STEP_SETUP, tags.ZK_SETUP)
        reader = PayloadReader(message.payload)
        n, y = reader.read_ints(2)
        rounds = reader.read_u8()
        reader.finish()
        if rounds != m:
            ctx.fail(STEP_SETUP, f"轮数不一致: 约定 {m}, 收到 {rounds}")
        if n < 15 or n % 2 == 0 or math.gcd(y, n) != 1:
            ctx.fail(STEP_SETUP, "公开实例非法")
        return (yield from qnr_verifier(ctx, n, y, m))

    return party


def _expected(m: int):
    def expected(view_a: LocalView, view_b: LocalView) -> tuple[ZkVerdict, ZkVerdict]:
        instance: QnrInstance = view_a.input
        if is_qr(instance.y, instance.modulus):
            # y 为剩余时证明方只能回答 0
            results = tuple(view_b.notes[f"b[{t}]"] == 0 for t in range(m))
        else:
            results = (True,) * m
        verdict = ZkVerdict.from_results(results)
        return verdict, verdict

    return expected


def make_qnr_proof(m: int = DEFAULT_ROUNDS) -> ProtocolDefinition:
    """input_a 为 QnrInstance（证明方知道分解）；input_b 为 None。"""
    check_rounds(m)
    return ProtocolDefinition(
        name="zkp-qnr",
        family=tags.FAMILY,
        description="二次非剩余交互证明：证明 y 不是模 N 的平方",
        party_a=_party_a(m),
        party_b=_party_b(m),
        tags=tags.describe(tags.ZK_SETUP, tags.ZK_QNR_QUERY, tags.ZK_QNR_ANSWER, tags.ZK_VERDICT),
        output_domains=("裁决（接受/拒绝, 失败轮号）", "裁决（接受/拒绝, 失败轮号）"),
        expected=_expected(m),
        params={"m": m},
    )


__all__ = ["QnrInstance", "make_qnr_proof", "qnr_prover", "qnr_verifier"]
