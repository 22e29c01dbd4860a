"""合同签署：逐轮不经意传输各自的签约秘密。

流程：
1. Set-up：双方交换秘密的公开部分（Rabin 为 N，图版本为图对）；
2. 每轮对尚未完成的方向各运行一次 OT（先 A→B，后 B→A）；
3. 轮末双方交换状态（是否已得到对方秘密）；
4. 双方都得到对方秘密即 "signed"，达到 max_rounds 仍未完成即 "aborted"。

所有消息负载都带合同的 sha256 摘要，不能挪用到另一份合同。
每个方向每轮成功概率 1/2，达成双向成功的期望轮数为 8/3。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol

from ..common.codec import decode_ints, encode_int, encode_u8
from ..common.exceptions import ParameterError
from ..common.log import logger
from ..numtheory import BlumModulus
from ..oblivious import (
    OtSecretIsomorphism,
    graph_ot_challenge,
    graph_ot_respond,
    rabin_challenge,
    rabin_receiver_outcome,
    rabin_respond,
    read_graph_pair,
)
from ..oblivious import tags as ot_tags
from ..session.errors import ROLE_A, ROLE_B
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from ..session.transcript import A_TO_B, B_TO_A
from ..session.wrappers import bind_associated_data
from . import tags
from .exchange import round_prefix

SIGNED = "signed"
ABORTED = "aborted"
STEP_SETUP = "Set-up"
STEP_STATUS = "Status"


@dataclass(frozen=True, slots=True)
class ContractOutcome:
    status: str
    rounds: int
    peer_secret: Any

    @property
    def signed(self) -> bool:
        return self.status == SIGNED


# region 签约秘密的 OT 方式
class SigningKit(Protocol):
    name: str
    ot_tags: tuple[int, ...]

    def publish(self, secret: Any) -> bytes: ...

    def read_public(self, ctx: PartyContext, payload: bytes) -> Any: ...

    def respond(self, ctx: PartyContext, secret: Any) -> PartyScript: ...

    def challenge(self, ctx: PartyContext, public: Any) -> PartyScript: ...

    def succeeded(self, sender: LocalView, receiver: LocalView, prefix: str) -> bool: ...

    def revealed(self, secret: Any) -> Any: ...


class RabinKit:
    name = "rabin"
    ot_tags = (ot_tags.RABIN_SQUARE, ot_tags.RABIN_ROOT)

    def publish(self, secret: BlumModulus) -> bytes:
        return encode_int(secret.modulus)

    def read_public(self, ctx: PartyContext, payload: bytes) -> int:
        (n,) = decode_ints(payload, 1)
        if n < 15 or n % 2 == 0:
            ctx.fail(STEP_SETUP, f"模数 {n} 不是奇合数")
        return n

    def respond(self, ctx: PartyContext, secret: BlumModulus) -> PartyScript:
        return rabin_respond(ctx, secret)

    def challenge(self, ctx: PartyContext, public: int) -> PartyScript:
        return rabin_challenge(ctx, public)

    def succeeded(self, sender: LocalView, receiver: LocalView, prefix: str) -> bool:
        secret: BlumModulus = sender.input
        x, root = receiver.notes[f"{prefix}x"], sender.notes[f"{prefix}root"]
        return rabin_receiver_outcome(x, root, secret.modulus) is not None

    def revealed(self, secret: BlumModulus) -> tuple[int, int]:
        return secret.factors


class GraphKit:
    name = "graph"
    ot_tags = (ot_tags.GRAPH_OT_COPY, ot_tags.GRAPH_OT_ISOMORPHISM)

    def publish(self, secret: OtSecretIsomorphism) -> bytes:
        return secret.g1.encode() + secret.g2.encode()

    def read_public(self, ctx: PartyContext, payload: bytes):
        return read_graph_pair(ctx, payload)

    def respond(self, ctx: PartyContext, secret: OtSecretIsomorphism) -> PartyScript:
        return graph_ot_respond(ctx, secret)

    def challenge(self, ctx: PartyContext, public) -> PartyScript:
        return graph_ot_challenge(ctx, public)

    def succeeded(self, sender: LocalView, receiver: LocalView, prefix: str) -> bool:
        return sender.notes[f"{prefix}j"] != receiver.notes[f"{prefix}i"]

    def revealed(self, secret: OtSecretIsomorphism):
        return secret.pi


# endregion


# region 协议方
def _status_round(ctx: PartyContext, role: str, t: int, mine: bool) -> PartyScript:
    """交换状态标志，返回 (A 已得到, B 已得到)。"""
    label_a, label_b = f"round{t}/{STEP_STATUS}/A", f"round{t}/{STEP_STATUS}/B"
    if role == ROLE_A:
        yield ctx.send(label_a, tags.CONTRACT_STATUS, encode_u8(int(mine)))
        message = yield ctx.recv(label_b, tags.CONTRACT_STATUS)
        label = label_b
    else:
        message = yield ctx.recv(label_a, tags.CONTRACT_STATUS)
        yield ctx.send(label_b, tags.CONTRACT_STATUS, encode_u8(int(mine)))
        label = label_a
    if message.payload not in (b"\x00", b"\x01"):
        ctx.fail(label, "状态必须是单字节 0 或 1")
    theirs = message.payload == b"\x01"
    return (mine, theirs) if role == ROLE_A else (theirs, mine)


def _signing_party(kit: SigningKit, role: str, max_rounds: int):
    own_direction = A_TO_B if role == ROLE_A else B_TO_A

    def party(ctx: PartyContext) -> PartyScript:
        secret = ctx.input
        if role == ROLE_A:
            yield ctx.send(f"{STEP_SETUP}/A", tags.CONTRACT_PUBLIC, kit.publish(secret))
            message = yield ctx.recv(f"{STEP_SETUP}/B", tags.CONTRACT_PUBLIC)
        else:
            message = yield ctx.recv(f"{STEP_SETUP}/A", tags.CONTRACT_PUBLIC)
            yield ctx.send(f"{STEP_SETUP}/B", tags.CONTRACT_PUBLIC, kit.publish(secret))
        peer_public = kit.read_public(ctx, message.payload)

        received = None
        a_has = b_has = False
        rounds = 0
        for t in range(max_rounds):
            # A→B 方向由 B 接收，B 已得到时不再运行
            for direction, done in ((A_TO_B, b_has), (B_TO_A, a_has)):
                if done:
                    continue
                sub = ctx.sub(round_prefix(t, direction))
                if direction == own_direction:
                    yield from kit.respond(sub, secret)
                else:
                    got = yield from kit.challenge(sub, peer_public)
                    if got is not None and received is None:
                        received = got
            rounds = t + 1
            a_has, b_has = yield from _status_round(ctx, role, t, received is not None)
            if a_has and b_has:
                break

        status = SIGNED if a_has and b_has else ABORTED
        if status == ABORTED:
            logger.warning("⚠️ 合同签署在 %d 轮后中止 (%s 方)", rounds, role)
        return ContractOutcome(status, rounds, received)

    return party


# endregion


def _expected(kit: SigningKit, max_rounds: int):
    def expected(view_a: LocalView, view_b: LocalView):
        a_has = b_has = False
        rounds = 0
        for t in range(max_rounds):
            b_now = b_has or kit.succeeded(view_a, view_b, round_prefix(t, A_TO_B))
            a_now = a_has or kit.succeeded(view_b, view_a, round_prefix(t, B_TO_A))
            a_has, b_has, rounds = a_now, b_now, t + 1
            if a_has and b_has:
                break
        status = SIGNED if a_has and b_has else ABORTED
        return (
            ContractOutcome(status, rounds, kit.revealed(view_b.input) if a_has else None),
            ContractOutcome(status, rounds, kit.revealed(view_a.input) if b_has else None),
        )

    return expected


def _make_contract(kit: SigningKit, name: str, description: str, contract: bytes, max_rounds: int):
    if max_rounds < 0:
        raise ParameterError(f"max_rounds 不能为负: {max_rounds}")
    return ProtocolDefinition(
        name=name,
        family=tags.FAMILY,
        description=description,
        party_a=bind_associated_data(_signing_party(kit, ROLE_A, max_rounds), contract),
        party_b=bind_associated_data(_signing_party(kit, ROLE_B, max_rounds), contract),
        tags=tags.describe(tags.CONTRACT_PUBLIC, tags.CONTRACT_STATUS)
        | ot_tags.describe(*kit.ot_tags),
        output_domains=(
            "signed/aborted、轮数与 B 的秘密或无",
            "signed/aborted、轮数与 A 的秘密或无",
        ),
        expected=_expected(kit, max_rounds),
        params={"max_rounds": max_rounds, "contract_bytes": len(contract), "ot": kit.name},
    )


def make_contract_sign(contract: bytes, max_rounds: int = 32) -> ProtocolDefinition:
    """input_a / input_b 为各自的 BlumModulus；成功后得到对方的 (p, q)。"""
    return _make_contract(
        RabinKit(), "contract-sign", "合同签署：逐轮 Rabin OT 传输各自的分解", contract, max_rounds
    )


def make_contract_sign_graph(contract: bytes, max_rounds: int = 32) -> ProtocolDefinition:
    """input_a / input_b 为各自的 OtSecretIsomorphism。"""
    return _make_contract(
        GraphKit(), "contract-sign-graph", "合同签署：逐轮图 OT 传输各自的同构", contract, max_rounds
    )


__all__ = [
    "ABORTED",
    "SIGNED",
    "ContractOutcome",
    "GraphKit",
    "RabinKit",
    "SigningKit",
    "make_contract_sign",
    "make_contract_sign_graph",
]
