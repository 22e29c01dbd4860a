"""基于图同构的秘密交换。

流程：
1. Set-up：双方交换各自的公开图对；
2. 每轮先由 A 作为发送方运行一次图 OT（B 可能得到 A 的同构），
   再由 B 作为发送方运行一次（A 可能得到 B 的同构）；
3. m 轮后各自报告是否得到对方的秘密，每个方向失败的概率为 2^−m。
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graphs import Permutation
from ..oblivious import (
    OtSecretIsomorphism,
    graph_ot_challenge,
    graph_ot_respond,
    read_graph_pair,
)
from ..oblivious import tags as ot_tags
from ..session.errors import ROLE_A, ROLE_B
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from ..session.transcript import A_TO_B, B_TO_A
from . import tags

STEP_SETUP = "Set-up"


@dataclass(frozen=True, slots=True)
class ExchangeResult:
    secret: Permutation | None
    obtained_round: int | None

    @property
    def obtained(self) -> bool:
        return self.secret is not None


def round_prefix(t: int, direction: str) -> str:
    return f"round{t}/{direction}/"


def _party(role: str, m: int):
    own_direction = A_TO_B if role == ROLE_A else B_TO_A

    def party(ctx: PartyContext) -> PartyScript:
        if m == 0:
            return None
        secret: OtSecretIsomorphism = ctx.input
        pair_payload = secret.g1.encode() + secret.g2.encode()
        if role == ROLE_A:
            yield ctx.send(f"{STEP_SETUP}/A", ot_tags.GRAPH_OT_PAIR, pair_payload)
            message = yield ctx.recv(f"{STEP_SETUP}/B", ot_tags.GRAPH_OT_PAIR)
        else:
            message = yield ctx.recv(f"{STEP_SETUP}/A", ot_tags.GRAPH_OT_PAIR)
            yield ctx.send(f"{STEP_SETUP}/B", ot_tags.GRAPH_OT_PAIR, pair_payload)
        peer_pair = read_graph_pair(ctx, message.payload)

        received, obtained_round = None, None
        for t in range(m):
            for direction in (A_TO_B, B_TO_A):
                sub = ctx.sub(round_prefix(t, direction))
                if direction == own_direction:
                    yield from graph_ot_respond(sub, secret)
                    continue
                got = yield from graph_ot_challenge(sub, peer_pair)
                if got is not None and received is None:
                    received, obtained_round = got, t
        return ExchangeResult(received, obtained_round)

    return party


def _received(sender: LocalView, receiver: LocalView, direction: str, m: int):
    secret: OtSecretIsomorphism = sender.input
    for t in range(m):
        prefix = round_prefix(t, direction)
        if sender.notes[f"{prefix}j"] != receiver.notes[f"{prefix}i"]:
            return ExchangeResult(secret.pi, t)
    return ExchangeResult(None, None)


def _expected(m: int):
    def expected(view_a: LocalView, view_b: LocalView):
        if m == 0:
            return None, None
        return _received(view_b, view_a, B_TO_A, m), _received(view_a, view_b, A_TO_B, m)

    return expected


def make_secret_exchange_graph(m: int = 10) -> ProtocolDefinition:
    """input_a / input_b 为各自的 OtSecretIsomorphism（刚性图）。"""
    return ProtocolDefinition(
        name="secret-exchange-graph",
        family=tags.FAMILY,
        description="图同构秘密交换：双方交替运行 m 轮图 OT",
        party_a=_party(ROLE_A, m),
        party_b=_party(ROLE_B, m),
        tags=ot_tags.describe(
            ot_tags.GRAPH_OT_PAIR, ot_tags.GRAPH_OT_COPY, ot_tags.GRAPH_OT_ISOMORPHISM
        ),
        output_domains=("B 的同构或无（及得到的轮次）", "A 的同构或无（及得到的轮次）"),
        expected=_expected(m),
        params={"m": m},
    )


__all__ = ["ExchangeResult", "make_secret_exchange_graph", "round_prefix"]
