"""基于图同构的不经意传输。

流程：
1. Set-up：A → B 公开 G1, G2（秘密为 G1→G2 的同构）；
2. Challenge：B 随机取 i 与重标号 σ，发送 H = σ(G_i)；
3. Response：A 随机取 j，暴力求出 φ: H → G_j，发送 (j, φ)；
4. Verification：B 检查 φ(H) = G_j；j ≠ i 时由 φ∘σ 得到秘密同构。
"""

from __future__ import annotations

from dataclasses import dataclass

from ..common.codec import PayloadReader, encode_u8
from ..common.exceptions import ParameterError
from ..common.rng import RandomStream
from ..graphs import (
    Graph,
    Permutation,
    apply_perm,
    compose,
    find_isomorphism,
    invert,
    random_perm,
    random_rigid_graph,
)
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags

STEP_SETUP = "Set-up"
STEP_CHALLENGE = "Challenge"
STEP_RESPONSE = "Response"
STEP_VERIFICATION = "Verification"


@dataclass(frozen=True, slots=True)
class OtSecretIsomorphism:
    g1: Graph
    g2: Graph
    pi: Permutation

    def __post_init__(self) -> None:
        if apply_perm(self.g1, self.pi) != self.g2:
            raise ParameterError("π 不是 G1 → G2 的同构")

    @classmethod
    def generate(cls, n: int, rng: RandomStream) -> OtSecretIsomorphism:
        g1 = random_rigid_graph(n, rng)
        pi = random_perm(n, rng)
        return cls(g1, apply_perm(g1, pi), pi)


def recover_secret(i: int, j: int, sigma: Permutation, phi: Permutation) -> Permutation | None:
    """σ: G_i → H，φ: H → G_j；j ≠ i 时得到 G1 → G2 的映射。"""
    if i == j:
        return None
    through = compose(phi, sigma)
    return through if i == 0 else invert(through)


# region 协议方
def graph_ot_respond(ctx: PartyContext, secret: OtSecretIsomorphism) -> PartyScript:
    """Challenge / Response 两步（公开图对之后）。"""
    pair = (secret.g1, secret.g2)
    message = yield ctx.recv(STEP_CHALLENGE, tags.GRAPH_OT_COPY)
    reader = PayloadReader(message.payload)
    copy = Graph.read(reader)
    reader.finish()
    if copy.n != secret.g1.n:
        ctx.fail(STEP_CHALLENGE, "副本顶点数与公开图不符")

    j = ctx.rng.bit()
    phi = find_isomorphism(copy, pair[j])
    if phi is None:
        ctx.fail(STEP_CHALLENGE, "H 与公开图不同构")
    ctx.remember("j", j)
    yield ctx.send(STEP_RESPONSE, tags.GRAPH_OT_ISOMORPHISM, encode_u8(j) + phi.encode())
    return None


def read_graph_pair(ctx: PartyContext, payload: bytes) -> tuple[Graph, Graph]:
    reader = PayloadReader(payload)
    pair = (Graph.read(reader), Graph.read(reader))
    reader.finish()
    if pair[0].n != pair[1].n:
        ctx.fail(STEP_SETUP, "公开图顶点数不一致")
    return pair


def graph_ot_challenge(ctx: PartyContext, pair: tuple[Graph, Graph]) -> PartyScript:
    i = ctx.rng.bit()
    sigma = random_perm(pair[0].n, ctx.rng)
    ctx.remember("i", i)
    copy = apply_perm(pair[i], sigma)
    yield ctx.send(STEP_CHALLENGE, tags.GRAPH_OT_COPY, copy.encode())

    message = yield ctx.recv(STEP_RESPONSE, tags.GRAPH_OT_ISOMORPHISM)
    reader = PayloadReader(message.payload)
    j = reader.read_u8()
    phi = Permutation.read(reader)
    reader.finish()
    if j > 1 or phi.n != copy.n or apply_perm(copy, phi) != pair[j]:
        ctx.fail(STEP_VERIFICATION, "φ 不是 H 到 G_j 的同构")
    return recover_secret(i, j, sigma, phi)


def graph_ot_sender(ctx: PartyContext, secret: OtSecretIsomorphism) -> PartyScript:
    yield ctx.send(STEP_SETUP, tags.GRAPH_OT_PAIR, secret.g1.encode() + secret.g2.encode())
    return (yield from graph_ot_respond(ctx, secret))


def graph_ot_receiver(ctx: PartyContext) -> PartyScript:
    message = yield ctx.recv(STEP_SETUP, tags.GRAPH_OT_PAIR)
    pair = read_graph_pair(ctx, message.payload)
    return (yield from graph_ot_challenge(ctx, pair))


def _party_a(ctx: PartyContext) -> PartyScript:
    return (yield from graph_ot_sender(ctx, ctx.input))


def _party_b(ctx: PartyContext) -> PartyScript:
    return (yield from graph_ot_receiver(ctx))


# endregion


def _expected(view_a: LocalView, view_b: LocalView) -> tuple[None, Permutation | None]:
    secret: OtSecretIsomorphism = view_a.input
    if view_a.notes["j"] == view_b.notes["i"]:
        return None, None
    return None, secret.pi


def make_graph_ot() -> ProtocolDefinition:
    """input_a 为 OtSecretIsomorphism（刚性图时秘密唯一）；input_b 为 None。"""
    return ProtocolDefinition(
        name="graph-ot",
        family=tags.FAMILY,
        description="图同构不经意传输：以 1/2 概率传出 G1→G2 的同构",
        party_a=_party_a,
        party_b=_party_b,
        tags=tags.describe(
            tags.GRAPH_OT_PAIR, tags.GRAPH_OT_COPY, tags.GRAPH_OT_ISOMORPHISM
        ),
        output_domains=("无输出", "G1→G2 的同构或无"),
        expected=_expected,
    )


__all__ = [
    "OtSecretIsomorphism",
    "graph_ot_challenge",
    "graph_ot_receiver",
    "graph_ot_respond",
    "graph_ot_sender",
    "make_graph_ot",
    "read_graph_pair",
    "recover_secret",
]
