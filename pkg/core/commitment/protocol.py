"""比特承诺会话：三种方案共用的 Set-up / Commitment / Opening / Verification 流程。

流程：
1. Set-up：A → B 公开参数；
2. Commitment：A → B 见证，B 回执 Ack；
3. Opening：A → B 承诺的值与随机性；
4. Verification：B 用纯函数 verify 检查，失败时指出未通过的谓词。

commit-qrp 可选用非剩余零知识证明替代公开 p, q，此时打开只含 (b, r)。
"""

from __future__ import annotations

from collections.abc import Callable
from typing import TypeAlias

from ..common.codec import decode_ints, encode_int
from ..common.exceptions import PayloadError
from ..common.log import logger
from ..graphs import gen_noniso_pair
from ..numtheory import gen_blum, gen_field, jacobi, sample_nonresidue_jacobi1, sample_unit
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from ..zkproof import qnr_prover, qnr_verifier
from ..zkproof import tags as zk_tags
from ..zkproof.rounds import DEFAULT_ROUNDS, check_rounds
from . import tags
from .schemes import (
    DLP,
    GRAPH,
    QRP,
    Commitment,
    Committed,
    Opening,
    QrpParams,
    dlp_commit,
    graph_commit,
    qrp_check_opening,
    qrp_commit,
    qrp_witness,
    verify_commitment,
)

STEP_SETUP = "Set-up"
STEP_COMMITMENT = "Commitment"
STEP_ACK = "Ack"
STEP_OPENING = "Opening"
STEP_VERIFICATION = "Verification"
NONRESIDUE_PREFIX = "nonresidue/"

CommitMaker: TypeAlias = Callable[[PartyContext], Committed]


# region 通用两方
def commit_sender(ctx: PartyContext, committed: Committed) -> PartyScript:
    commitment = committed.commitment
    yield ctx.send(STEP_SETUP, tags.COMMIT_PARAMS, commitment.public_params)
    yield ctx.send(STEP_COMMITMENT, tags.COMMIT_WITNESS, commitment.witness)
    yield ctx.recv(STEP_ACK, tags.COMMIT_ACK)
    yield ctx.send(STEP_OPENING, tags.COMMIT_OPENING, committed.opening.encode())
    return None


def commit_receiver(ctx: PartyContext, scheme: str) -> PartyScript:
    params = yield ctx.recv(STEP_SETUP, tags.COMMIT_PARAMS)
    witness = yield ctx.recv(STEP_COMMITMENT, tags.COMMIT_WITNESS)
    commitment = Commitment(scheme, params.payload, witness.payload)
    ctx.remember("witness", witness.payload)
    yield ctx.send(STEP_ACK, tags.COMMIT_ACK, b"")

    message = yield ctx.recv(STEP_OPENING, tags.COMMIT_OPENING)
    opening = Opening.decode(message.payload)
    result = verify_commitment(commitment, opening)
    if not result:
        logger.warning("⚠️ %s 承诺验证失败: %s", scheme, result.failed_predicate)
        ctx.fail(STEP_VERIFICATION, f"未通过: {result.failed_predicate}")
    return opening.committed_value


def _plain_session(make: CommitMaker, scheme: str):
    def party_a(ctx: PartyContext) -> PartyScript:
        committed = make(ctx)
        ctx.remember("value", committed.opening.committed_value)
        return (yield from commit_sender(ctx, committed))

    def party_b(ctx: PartyContext) -> PartyScript:
        return (yield from commit_receiver(ctx, scheme))

    return party_a, party_b


def _expected(view_a: LocalView, view_b: LocalView) -> tuple[None, int]:
    return None, view_a.notes["value"]


# endregion


# region QRP + 非剩余证明
def _qrp_zk_party_a(bits: int, m: int):
    def party(ctx: PartyContext) -> PartyScript:
        b = ctx.input
        modulus = gen_blum(bits, ctx.rng)
        params = QrpParams(modulus, sample_nonresidue_jacobi1(modulus, ctx.rng))
        ctx.remember("value", b)
        yield ctx.send(STEP_SETUP, tags.COMMIT_PARAMS, params.encode())
        verdict = yield from qnr_prover(ctx.sub(NONRESIDUE_PREFIX), modulus, m)
        if not verdict.accepted:
            ctx.fail(STEP_SETUP, "对方拒绝了非剩余证明")

        n = modulus.modulus
        r = sample_unit(n, ctx.rng)
        witness = encode_int(qrp_witness(b, r, params.y, n))
        yield ctx.send(STEP_COMMITMENT, tags.COMMIT_WITNESS, witness)
        yield ctx.recv(STEP_ACK, tags.COMMIT_ACK)
        yield ctx.send(STEP_OPENING, tags.COMMIT_OPENING, Opening(b, encode_int(r)).encode())
        return None

    return party


def _qrp_zk_party_b(m: int):
    def party(ctx: PartyContext) -> PartyScript:
        message = yield ctx.recv(STEP_SETUP, tags.COMMIT_PARAMS)
        n, y = decode_ints(message.payload, 2)
        if n < 15 or n % 2 == 0 or jacobi(y, n) != 1:
            ctx.fail(STEP_SETUP, "jacobi(y, N) ≠ 1")
        verdict = yield from qnr_verifier(ctx.sub(NONRESIDUE_PREFIX), n, y, m)
        if not verdict.accepted:
            logger.warning("⚠️ 非剩余证明在第 %d 轮失败", verdict.failure_round)
            ctx.fail(STEP_SETUP, "y 的非剩余证明未通过")

        message = yield ctx.recv(STEP_COMMITMENT, tags.COMMIT_WITNESS)
        (c,) = decode_ints(message.payload, 1)
        ctx.remember("witness", message.payload)
        yield ctx.send(STEP_ACK, tags.COMMIT_ACK, b"")

        message = yield ctx.recv(STEP_OPENING, tags.COMMIT_OPENING)
        opening = Opening.decode(message.payload)
        try:
            (r,) = decode_ints(opening.randomness, 1)
        except PayloadError:
            ctx.fail(STEP_VERIFICATION, "未通过: 编码格式")
        result = qrp_check_opening(opening.committed_value, r, y, n, c)
        if not result:
            ctx.fail(STEP_VERIFICATION, f"未通过: {result.failed_predicate}")
        return opening.committed_value

    return party


# endregion


# region 协议工厂
def make_commit_qrp(
    bits: int = 16, *, zk_nonresidue: bool = False, rounds: int = DEFAULT_ROUNDS
) -> ProtocolDefinition:
    """input_a 为承诺的比特；input_b 为 None。B 的输出为打开后的比特。"""
    if zk_nonresidue:
        check_rounds(rounds)
        party_a, party_b = _qrp_zk_party_a(bits, rounds), _qrp_zk_party_b(rounds)
        message_tags = tags.describe(*tags.DESCRIPTIONS) | zk_tags.describe(
            zk_tags.ZK_QNR_QUERY, zk_tags.ZK_QNR_ANSWER, zk_tags.ZK_VERDICT
        )
        params = {"bits": bits, "rounds": rounds}
    else:

        def make(ctx: PartyContext) -> Committed:
            modulus = gen_blum(bits, ctx.rng)
            params = QrpParams(modulus, sample_nonresidue_jacobi1(modulus, ctx.rng))
            return qrp_commit(ctx.input, params, ctx.rng)

        party_a, party_b = _plain_session(make, QRP)
        message_tags = tags.describe(*tags.DESCRIPTIONS)
        params = {"bits": bits}
    return ProtocolDefinition(
        name="commit-qrp-zk" if zk_nonresidue else "commit-qrp",
        family=tags.FAMILY,
        description=(
            "QRP 比特承诺，以零知识证明 y 为非剩余，不公开 p, q"
            if zk_nonresidue
            else "QRP 比特承诺：c ≡ r²·y^b，打开时公开 p, q"
        ),
        party_a=party_a,
        party_b=party_b,
        tags=message_tags,
        output_domains=("无输出", "承诺的比特"),
        expected=_expected,
        params=params,
    )


def make_commit_dlp(bits: int = 16) -> ProtocolDefinition:
    """input_a 为承诺的整数 x（None 时在 (1, p−1) 内随机取）；input_b 为 None。"""

    def make(ctx: PartyContext) -> Committed:
        field = gen_field(bits, ctx.rng)
        x = ctx.input if ctx.input is not None else ctx.rng.randrange(2, field.p - 1)
        return dlp_commit(x, field)

    party_a, party_b = _plain_session(make, DLP)
    return ProtocolDefinition(
        name="commit-dlp",
        family=tags.FAMILY,
        description="DLP 承诺：y ≡ g^x，打开时公开 x",
        party_a=party_a,
        party_b=party_b,
        tags=tags.describe(*tags.DESCRIPTIONS),
        output_domains=("无输出", "承诺的整数"),
        expected=_expected,
        params={"bits": bits},
    )


def make_commit_graph(n: int = 8) -> ProtocolDefinition:
    """input_a 为承诺的比特；input_b 为 None。"""

    def make(ctx: PartyContext) -> Committed:
        return graph_commit(ctx.input, gen_noniso_pair(n, ctx.rng), ctx.rng)

    party_a, party_b = _plain_session(make, GRAPH)
    return ProtocolDefinition(
        name="commit-graph",
        family=tags.FAMILY,
        description="图比特承诺：发送 G 或 H 的同构副本",
        party_a=party_a,
        party_b=party_b,
        tags=tags.describe(*tags.DESCRIPTIONS),
        output_domains=("无输出", "承诺的比特"),
        expected=_expected,
        params={"n": n},
    )


# endregion

__all__ = [
    "commit_receiver",
    "commit_sender",
    "make_commit_dlp",
    "make_commit_graph",
    "make_commit_qrp",
]
