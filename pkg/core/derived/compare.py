"""双方秘密比较（TSCP）及其特例。

流程：
1. Set-up：双方交换 (n, k)，不一致则中止；
2. 对第 i 位，A 以 (r^A_i0, r^A_i1) 作发送方、B 以 s^B_i 作选择运行 1-2 OT，
   再反过来由 B 发送、A 选择；
3. 每方计算收到的掩码与自己按 s_i 选出的掩码的异或累加和并交换；
4. 两个和相等判为"可能相等"（0），不等判为"一定不同"（1）。
秘密不同而和恰好相等的概率为 2^−k。
"""

from __future__ import annotations

from dataclasses import dataclass

from ..common.bits import BitString, xor_all
from ..common.codec import PayloadReader, encode_u16
from ..common.exceptions import ParameterError
from ..common.log import logger
from ..common.rng import RandomStream
from ..numtheory import DlpPublicParams, public_dlp_params
from ..oblivious import (
    TwoSecrets,
    check_mask_width,
    dlp_ot_receiver,
    dlp_ot_sender,
    field_bits_for,
)
from ..oblivious import tags as ot_tags
from ..session.errors import ROLE_A, ROLE_B
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from ..session.transcript import A_TO_B, B_TO_A
from . import tags

POSSIBLY_EQUAL = 0
DIFFERENT = 1
STEP_SETUP = "Set-up"
STEP_SUM = "Sum"
DEFAULT_STRING_K = 32
DEFAULT_TSCP_K = 16
VERDICT_OUTPUT = "比较结果（0 可能相等 / 1 不同）"


@dataclass(frozen=True, slots=True)
class ComparisonInput:
    secret: BitString
    masks: tuple[TwoSecrets, ...]

    def __post_init__(self) -> None:
        if len(self.masks) != len(self.secret):
            raise ParameterError(f"需要 {len(self.secret)} 对掩码，实际 {len(self.masks)} 对")
        if len({pair.k for pair in self.masks}) > 1:
            raise ParameterError("掩码长度不一致")

    @property
    def n(self) -> int:
        return len(self.secret)

    @property
    def k(self) -> int:
        return self.masks[0].k if self.masks else 0

    @classmethod
    def random(cls, secret: BitString, k: int, rng: RandomStream) -> ComparisonInput:
        masks = tuple(
            TwoSecrets(BitString.random(k, rng), BitString.random(k, rng))
            for _ in range(len(secret))
        )
        return cls(secret, masks)

    def own_sum(self) -> BitString:
        """Σ_i r_{i, s_i}"""
        return xor_all([pair.pick(self.secret.bit(i)) for i, pair in enumerate(self.masks)], self.k)

    def selected_by(self, other: BitString) -> BitString:
        """Σ_i r_{i, t_i}，t 为对方的秘密。"""
        return xor_all([pair.pick(other.bit(i)) for i, pair in enumerate(self.masks)], self.k)


def comparison_sums(a: ComparisonInput, b: ComparisonInput) -> tuple[BitString, BitString]:
    """由双方全部输入直接算出两个公开的累加和。"""
    sum_a = b.selected_by(a.secret) ^ a.own_sum()
    sum_b = a.selected_by(b.secret) ^ b.own_sum()
    return sum_a, sum_b


def comparison_verdict(a: ComparisonInput, b: ComparisonInput) -> int:
    sum_a, sum_b = comparison_sums(a, b)
    return POSSIBLY_EQUAL if sum_a == sum_b else DIFFERENT


# region 协议方
def _exchange_header(
    ctx: PartyContext, role: str, tag: int, values: tuple[int, int], what: str
) -> PartyScript:
    payload = encode_u16(values[0]) + encode_u16(values[1])
    label_a, label_b = f"{STEP_SETUP}/A", f"{STEP_SETUP}/B"
    if role == ROLE_A:
        yield ctx.send(label_a, tag, payload)
        message = yield ctx.recv(label_b, tag)
        label = label_b
    else:
        message = yield ctx.recv(label_a, tag)
        label = label_a
    reader = PayloadReader(message.payload)
    theirs = (reader.read_u16(), reader.read_u16())
    reader.finish()
    if theirs != values:
        logger.warning("⚠️ %s 不一致: %s != %s", what, values, theirs)
        ctx.fail(label, f"{what} 不一致: 本方 {values}, 对方 {theirs}")
    if role != ROLE_A:
        yield ctx.send(label_b, tag, payload)
    return None


def tscp_exchange(
    ctx: PartyContext, role: str, params: DlpPublicParams, own: ComparisonInput
) -> PartyScript:
    """逐位双向 1-2 OT 并交换累加和，返回比较结果。"""
    own_direction = A_TO_B if role == ROLE_A else B_TO_A
    received: list[BitString] = []
    for i in range(own.n):
        for direction in (A_TO_B, B_TO_A):
            sub = ctx.sub(f"bit{i}/{direction}/")
            if direction == own_direction:
                yield from dlp_ot_sender(sub, params, own.masks[i])
            else:
                got = yield from dlp_ot_receiver(sub, params, own.secret.bit(i), own.k)
                received.append(got)

    total = xor_all(received, own.k) ^ own.own_sum()
    label_a, label_b = f"{STEP_SUM}/A", f"{STEP_SUM}/B"
    if role == ROLE_A:
        yield ctx.send(label_a, tags.TSCP_SUM, total.encode())
        message = yield ctx.recv(label_b, tags.TSCP_SUM)
    else:
        message = yield ctx.recv(label_a, tags.TSCP_SUM)
        yield ctx.send(label_b, tags.TSCP_SUM, total.encode())
    reader = PayloadReader(message.payload)
    theirs = BitString.read(reader)
    reader.finish()
    if len(theirs) != own.k:
        ctx.fail(label_b if role == ROLE_A else label_a, f"累加和长度不是 {own.k} 位")
    return POSSIBLY_EQUAL if theirs == total else DIFFERENT


def _tscp_party(role: str, params: DlpPublicParams, n: int, k: int, build):
    def party(ctx: PartyContext) -> PartyScript:
        own: ComparisonInput = build(ctx)
        ctx.remember("comparison", own)
        yield from _exchange_header(ctx, role, tags.TSCP_SETUP, (own.n, own.k), "(n, k)")
        if (own.n, own.k) != (n, k):
            ctx.fail(STEP_SETUP, f"输入规模 ({own.n}, {own.k}) 与约定的 ({n}, {k}) 不符")
        return (yield from tscp_exchange(ctx, role, params, own))

    return party


def _tscp_expected(view_a: LocalView, view_b: LocalView) -> tuple[int, int]:
    verdict = comparison_verdict(view_a.notes["comparison"], view_b.notes["comparison"])
    return verdict, verdict


# endregion


def _dlp_params(k: int, field_bits: int | None) -> DlpPublicParams:
    params = public_dlp_params(field_bits or field_bits_for(k))
    check_mask_width(params, k)
    return params


def _definition(
    name: str, description: str, setup_tag: int, party_a, party_b, expected, params: dict
):
    return ProtocolDefinition(
        name=name,
        family=tags.FAMILY,
        description=description,
        party_a=party_a,
        party_b=party_b,
        tags=tags.describe(setup_tag, tags.TSCP_SUM)
        | ot_tags.describe(ot_tags.DLP_OT_BETAS, ot_tags.DLP_OT_TRANSFERS),
        output_domains=(VERDICT_OUTPUT, VERDICT_OUTPUT),
        expected=expected,
        params=params,
    )


def _tscp_definition(name: str, description: str, n: int, k: int, field_bits, build):
    params = _dlp_params(k, field_bits)
    return _definition(
        name,
        description,
        tags.TSCP_SETUP,
        _tscp_party(ROLE_A, params, n, k, build),
        _tscp_party(ROLE_B, params, n, k, build),
        _tscp_expected,
        {"n": n, "k": k, "field_bits": params.p.bit_length()},
    )


def make_tscp_general(
    n: int, k: int = DEFAULT_TSCP_K, field_bits: int | None = None
) -> ProtocolDefinition:
    """input_a / input_b 为各自的 ComparisonInput（n 位秘密，2n 个 k 位掩码）。"""
    return _tscp_definition(
        "tscp-general", "一般双方秘密比较：2^−k 误判相等", n, k, field_bits, lambda ctx: ctx.input
    )


def _bit_input(k: int):
    def build(ctx: PartyContext) -> ComparisonInput:
        bit = ctx.input
        if bit not in (0, 1):
            raise ParameterError(f"输入必须是 0 或 1: {bit}")
        return ComparisonInput.random(BitString(bit, 1), k, ctx.rng)

    return build


def make_byzantine_agreement(field_bits: int | None = None) -> ProtocolDefinition:
    """input_a / input_b 为比特；n = k = 1，不同比特以 1/2 概率被发现。"""
    return _tscp_definition(
        "byzantine-agreement", "拜占庭协定：确认双方比特是否一致", 1, 1, field_bits, _bit_input(1)
    )


def _string_input(k: int):
    def build(ctx: PartyContext) -> ComparisonInput:
        secret: BitString = ctx.input
        return ComparisonInput.random(secret, k, ctx.rng)

    return build


def make_string_verification(
    n: int, k: int = DEFAULT_STRING_K, field_bits: int | None = None
) -> ProtocolDefinition:
    """input_a / input_b 为 n 位 BitString；长度不一致时在任何传输前中止。"""
    return _tscp_definition(
        "string-verification",
        "比特串验证：只确认两串是否相等",
        n,
        k,
        field_bits,
        _string_input(k),
    )


# region 百万富翁
def richer_output(role: str, bit: int) -> int:
    """第一个不同位上：A 的位为 1 即 A 更富，双方输出 0。"""
    a_bit = bit if role == ROLE_A else 1 - bit
    return 0 if a_bit == 1 else 1


def _position_bit(value: int, bit_width: int, i: int) -> int:
    return (value >> (bit_width - 1 - i)) & 1


def _millionaire_party(role: str, params: DlpPublicParams, bit_width: int, k: int):
    def party(ctx: PartyContext) -> PartyScript:
        wealth = ctx.input
        if not 0 <= wealth < 1 << bit_width:
            raise ParameterError(f"财富 {wealth} 超出 {bit_width} 位")
        yield from _exchange_header(
            ctx, role, tags.MILLIONAIRES_SETUP, (bit_width, k), "(位宽, k)"
        )
        for i in range(bit_width):
            bit = _position_bit(wealth, bit_width, i)
            own = ComparisonInput.random(BitString(bit, 1), k, ctx.rng)
            ctx.remember(f"comparison{i}", own)
            verdict = yield from tscp_exchange(ctx.sub(f"pos{i}/"), role, params, own)
            if verdict == DIFFERENT:
                ctx.remember("decided_at", i)
                return richer_output(role, bit)
        return 1

    return party


def _millionaire_expected(bit_width: int):
    def expected(view_a: LocalView, view_b: LocalView) -> tuple[int, int]:
        for i in range(bit_width):
            a, b = view_a.notes[f"comparison{i}"], view_b.notes[f"comparison{i}"]
            if comparison_verdict(a, b) == DIFFERENT:
                result = richer_output(ROLE_A, a.secret.value)
                return result, result
        return 1, 1

    return expected


def make_millionaires(
    bit_width: int = 8, k: int = DEFAULT_STRING_K, field_bits: int | None = None
) -> ProtocolDefinition:
    """input_a / input_b 为 < 2^bit_width 的非负整数；A 更富输出 (0, 0)，否则 (1, 1)。"""
    if bit_width < 1:
        raise ParameterError(f"位宽至少为 1: {bit_width}")
    params = _dlp_params(k, field_bits)
    return _definition(
        "millionaires",
        "百万富翁问题：从最高位起逐位比较，首个不同位决定结果",
        tags.MILLIONAIRES_SETUP,
        _millionaire_party(ROLE_A, params, bit_width, k),
        _millionaire_party(ROLE_B, params, bit_width, k),
        _millionaire_expected(bit_width),
        {"bit_width": bit_width, "k": k, "field_bits": params.p.bit_length()},
    )


# endregion

__all__ = [
    "DIFFERENT",
    "POSSIBLY_EQUAL",
    "ComparisonInput",
    "comparison_sums",
    "comparison_verdict",
    "make_byzantine_agreement",
    "make_millionaires",
    "make_string_verification",
    "make_tscp_general",
    "richer_output",
    "tscp_exchange",
]
