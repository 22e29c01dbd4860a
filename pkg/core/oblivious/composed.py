"""由两次 1-2 不经意传输组合出的图同构不经意传输。

流程：
1. Set-up：B → A 同构图对 G1, G2；
2. A 用暴力求出 ψ: G1 → G2，取随机 τ，公开中间图 H = τ(G1)，
   拆分为 f1 = τ: G1 → H 与 f2 = ψ∘τ⁻¹: H → G2；
3. 每份经一次 DLP 1-2OT 传送：A 把真实份额放在随机位置 a_t，
   另一位置放一个不同于真实份额的随机置换；B 以随机 b_t 选取；
4. 仅当两次都 a_t = b_t 时 f2∘f1 通过校验，B 得到同构（概率 1/4）。
"""

from __future__ import annotations

from ..common.bits import BitString
from ..common.codec import PayloadReader
from ..common.exceptions import ParameterError
from ..graphs import (
    Graph,
    Permutation,
    apply_perm,
    compose,
    find_isomorphism,
    invert,
    perm_rank,
    perm_rank_bits,
    perm_unrank,
    random_perm,
)
from ..numtheory import DlpPublicParams, public_dlp_params
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags
from .dlp import TwoSecrets, check_mask_width, dlp_ot_receiver, dlp_ot_sender, field_bits_for
from .graph_ot import OtSecretIsomorphism

STEP_SETUP = "Set-up"
STEP_COMMITMENT = "Commitment"
STEP_VERIFICATION = "Verification"
SHARES = (1, 2)


def _share_bits(perm: Permutation) -> BitString:
    return BitString(perm_rank(perm), perm_rank_bits(perm.n))


def _decoy(real: Permutation, ctx: PartyContext) -> Permutation:
    while True:
        candidate = random_perm(real.n, ctx.rng)
        if candidate != real:
            return candidate


# region 协议方
def composed_sender(ctx: PartyContext, params: DlpPublicParams) -> PartyScript:
    message = yield ctx.recv(STEP_SETUP, tags.COMPOSED_GRAPHS)
    reader = PayloadReader(message.payload)
    g1, g2 = Graph.read(reader), Graph.read(reader)
    reader.finish()
    if g1.n != g2.n or g1.n < 2:
        ctx.fail(STEP_SETUP, "图对规模非法")
    psi = find_isomorphism(g1, g2)
    if psi is None:
        ctx.fail(STEP_SETUP, "G1 与 G2 不同构")

    tau = random_perm(g1.n, ctx.rng)
    yield ctx.send(STEP_COMMITMENT, tags.COMPOSED_INTERMEDIATE, apply_perm(g1, tau).encode())

    for t, real in zip(SHARES, (tau, compose(psi, invert(tau))), strict=True):
        position = ctx.rng.bit()
        ctx.remember(f"a{t}", position)
        decoy = _decoy(real, ctx)
        pair = (real, decoy) if position == 0 else (decoy, real)
        secrets = TwoSecrets(_share_bits(pair[0]), _share_bits(pair[1]))
        yield from dlp_ot_sender(ctx.sub(f"share{t}/"), params, secrets)
    return None


def composed_receiver(
    ctx: PartyContext, params: DlpPublicParams, secret: OtSecretIsomorphism
) -> PartyScript:
    g1, g2 = secret.g1, secret.g2
    yield ctx.send(STEP_SETUP, tags.COMPOSED_GRAPHS, g1.encode() + g2.encode())

    message = yield ctx.recv(STEP_COMMITMENT, tags.COMPOSED_INTERMEDIATE)
    reader = PayloadReader(message.payload)
    intermediate = Graph.read(reader)
    reader.finish()

    k = perm_rank_bits(g1.n)
    received = []
    for t in SHARES:
        choice = ctx.rng.bit()
        ctx.remember(f"b{t}", choice)
        received.append((yield from dlp_ot_receiver(ctx.sub(f"share{t}/"), params, choice, k)))

    # 两次传输都要走完，之后才解码
    try:
        f1, f2 = (perm_unrank(bits.value, g1.n) for bits in received)
    except ParameterError:
        return None
    if apply_perm(g1, f1) != intermediate:
        return None
    candidate = compose(f2, f1)
    return candidate if apply_perm(g1, candidate) == g2 else None


# endregion


def _expected(view_a: LocalView, view_b: LocalView) -> tuple[None, Permutation | None]:
    secret: OtSecretIsomorphism = view_b.input
    delivered = all(view_a.notes[f"a{t}"] == view_b.notes[f"b{t}"] for t in SHARES)
    return None, secret.pi if delivered else None


def make_ot_from_two_1of2(n: int, field_bits: int | None = None) -> ProtocolDefinition:
    """input_a 为 None（A 靠暴力求同构）；input_b 为 B 提供的 OtSecretIsomorphism。"""
    k = perm_rank_bits(n)
    params = public_dlp_params(field_bits or field_bits_for(k))
    check_mask_width(params, k)

    def party_a(ctx: PartyContext) -> PartyScript:
        return (yield from composed_sender(ctx, params))

    def party_b(ctx: PartyContext) -> PartyScript:
        return (yield from composed_receiver(ctx, params, ctx.input))

    return ProtocolDefinition(
        name="ot-from-two-1of2",
        family=tags.FAMILY,
        description="两次 1-2OT 组合：两份同构都送达时 B 得到 G1→G2（概率 1/4）",
        party_a=party_a,
        party_b=party_b,
        tags=tags.describe(
            tags.COMPOSED_GRAPHS,
            tags.COMPOSED_INTERMEDIATE,
            tags.DLP_OT_BETAS,
            tags.DLP_OT_TRANSFERS,
        ),
        output_domains=("无输出", "G1→G2 的同构或无"),
        expected=_expected,
        params={"n": n, "field_bits": params.p.bit_length()},
    )


__all__ = ["composed_receiver", "composed_sender", "make_ot_from_two_1of2"]
