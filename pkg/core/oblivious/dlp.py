"""基于离散对数的 1-2 不经意传输（接收方选择，即 1C-2OT 实例）。

流程：
1. 公开参数 (p, g, c)：c 由公开标签散列得到，没有人知道 log_g c；
2. Challenge：B 取 x，令 β_i = g^x、β_{1−i} = c·(g^x)⁻¹，发送 (β0, β1)；
3. Response：A 检查 β0·β1 ≡ c，对 j = 0, 1 取 y_j，发送 α_j = g^{y_j}
   与 r_j = s_j ⊕ low_k(β_j^{y_j})；
4. B 计算 γ_i = α_i^x，得到 s_i = r_i ⊕ low_k(γ_i)。
"""

from __future__ import annotations

from dataclasses import dataclass

from ..common.bits import BitString, low_bits
from ..common.codec import PayloadReader, encode_int, encode_ints
from ..common.exceptions import ParameterError
from ..numtheory import DlpPublicParams, mod_inverse, public_dlp_params
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags

STEP_CHALLENGE = "Challenge"
STEP_RESPONSE = "Response"
STEP_VERIFICATION = "Verification"
DEFAULT_FIELD_BITS = 64
DEFAULT_SECRET_BITS = 16


@dataclass(frozen=True, slots=True)
class TwoSecrets:
    s0: BitString
    s1: BitString

    def __post_init__(self) -> None:
        if len(self.s0) != len(self.s1):
            raise ParameterError(f"两个秘密长度不同: {len(self.s0)} != {len(self.s1)}")

    @property
    def k(self) -> int:
        return len(self.s0)

    def pick(self, index: int) -> BitString:
        return self.s1 if index else self.s0


def check_mask_width(params: DlpPublicParams, k: int) -> None:
    if not 1 <= k < params.p.bit_length():
        raise ParameterError(
            f"秘密长度 {k} 必须小于 p 的位数 {params.p.bit_length()}"
        )


def field_bits_for(k: int, minimum: int = DEFAULT_FIELD_BITS) -> int:
    return max(minimum, k + 8)


# region 协议方
def dlp_ot_sender(
    ctx: PartyContext, params: DlpPublicParams, secrets: TwoSecrets
) -> PartyScript:
    p, g, k = params.p, params.g, secrets.k
    message = yield ctx.recv(STEP_CHALLENGE, tags.DLP_OT_BETAS)
    reader = PayloadReader(message.payload)
    betas = reader.read_ints(2)
    reader.finish()
    if not all(0 < b < p for b in betas) or betas[0] * betas[1] % p != params.c:
        ctx.fail(STEP_CHALLENGE, "β0·β1 ≢ c (mod p)，接收方违反结构")

    payload = b""
    for j in (0, 1):
        y = ctx.rng.randrange(1, p - 1)
        gamma = pow(betas[j], y, p)
        payload += encode_int(pow(g, y, p)) + (secrets.pick(j) ^ low_bits(gamma, k)).encode()
    yield ctx.send(STEP_RESPONSE, tags.DLP_OT_TRANSFERS, payload)
    return None


def dlp_ot_receiver(
    ctx: PartyContext, params: DlpPublicParams, choice: int, k: int
) -> PartyScript:
    p, g = params.p, params.g
    if choice not in (0, 1):
        raise ParameterError(f"选择位必须是 0 或 1: {choice}")
    x = ctx.rng.randrange(1, p - 1)
    ctx.remember("x", x)
    beta_i = pow(g, x, p)
    beta_other = params.c * mod_inverse(beta_i, p) % p
    betas = (beta_i, beta_other) if choice == 0 else (beta_other, beta_i)
    yield ctx.send(STEP_CHALLENGE, tags.DLP_OT_BETAS, encode_ints(*betas))

    message = yield ctx.recv(STEP_RESPONSE, tags.DLP_OT_TRANSFERS)
    reader = PayloadReader(message.payload)
    transfers = []
    for _ in (0, 1):
        alpha = reader.read_int()
        masked = BitString.read(reader)
        transfers.append((alpha, masked))
    reader.finish()
    if any(len(masked) != k for _, masked in transfers):
        ctx.fail(STEP_VERIFICATION, f"传输串长度与约定的 {k} 位不符")
    alpha, masked = transfers[choice]
    if not 0 < alpha < p:
        ctx.fail(STEP_VERIFICATION, "α 不在 Z_p* 中")
    return masked ^ low_bits(pow(alpha, x, p), k)


def _party_a(params: DlpPublicParams):
    def party(ctx: PartyContext) -> PartyScript:
        return (yield from dlp_ot_sender(ctx, params, ctx.input))

    return party


def _party_b(params: DlpPublicParams, k: int):
    def party(ctx: PartyContext) -> PartyScript:
        return (yield from dlp_ot_receiver(ctx, params, ctx.input, k))

    return party


# endregion


def _expected(view_a: LocalView, view_b: LocalView) -> tuple[None, BitString]:
    secrets: TwoSecrets = view_a.input
    return None, secrets.pick(view_b.input)


def make_dlp_1of2_ot(
    k: int = DEFAULT_SECRET_BITS, field_bits: int | None = None
) -> ProtocolDefinition:
    """input_a 为 TwoSecrets（k 位）；input_b 为选择位 i。"""
    params = public_dlp_params(field_bits or field_bits_for(k))
    check_mask_width(params, k)
    return ProtocolDefinition(
        name="dlp-1of2-ot",
        family=tags.FAMILY,
        description="离散对数 1-2 不经意传输：B 恰好得到自己选择的 s_i",
        party_a=_party_a(params),
        party_b=_party_b(params, k),
        tags=tags.describe(tags.DLP_OT_BETAS, tags.DLP_OT_TRANSFERS),
        output_domains=("无输出", f"{k} 位比特串 s_i"),
        expected=_expected,
        params={"k": k, "field_bits": params.p.bit_length()},
    )


__all__ = [
    "DEFAULT_SECRET_BITS",
    "TwoSecrets",
    "check_mask_width",
    "dlp_ot_receiver",
    "dlp_ot_sender",
    "field_bits_for",
    "make_dlp_1of2_ot",
]
