"""不经意传输的作弊脚本（每个都应被对方的验证步骤发现）。"""

from __future__ import annotations

from ..common.codec import PayloadReader, encode_int, encode_ints, encode_u8
from ..graphs import Permutation, encode_vertex_sequence, read_vertex_sequence
from ..session.message import Message
from ..session.party import PartyContext, ProtocolDefinition
from ..session.wrappers import substitute
from . import tags
from .graph_1of2 import STEP_RESPONSE as SALE_RESPONSE
from .rabin import STEP_RESPONSE as RABIN_RESPONSE


def rabin_nonroot(protocol: ProtocolDefinition, value: int = 0) -> ProtocolDefinition:
    """A 在 Response 步骤发回非平方根（默认 0，与 x² 互素故必然不是根）。"""

    def replace(message: Message, ctx: PartyContext) -> Message:
        return Message(tags.RABIN_ROOT, encode_int(value))

    return protocol.with_parties(
        party_a=substitute(protocol.party_a, RABIN_RESPONSE, replace),
        name=f"{protocol.name}+nonroot",
    )


def graph_ot_bad_isomorphism(protocol: ProtocolDefinition) -> ProtocolDefinition:
    """A 交换 φ 中两个像；刚性图上结果不再是同构。"""

    def replace(message: Message, ctx: PartyContext) -> Message:
        reader = PayloadReader(message.payload)
        j = reader.read_u8()
        images = list(Permutation.read(reader).mapping)
        images[0], images[1] = images[1], images[0]
        return Message(tags.GRAPH_OT_ISOMORPHISM, encode_u8(j) + Permutation(tuple(images)).encode())

    return protocol.with_parties(
        party_a=substitute(protocol.party_a, "Response", replace),
        name=f"{protocol.name}+bad-isomorphism",
    )


def dlp_structure_cheat(protocol: ProtocolDefinition, label: str = "Challenge") -> ProtocolDefinition:
    """B 发送 β0·β1 ≢ c（把 β1 乘上 2），企图同时得到两个秘密。"""

    def replace(message: Message, ctx: PartyContext) -> Message:
        reader = PayloadReader(message.payload)
        beta0, beta1 = reader.read_ints(2)
        return Message(tags.DLP_OT_BETAS, encode_ints(beta0, beta1 * 2))

    return protocol.with_parties(
        party_b=substitute(protocol.party_b, label, replace),
        name=f"{protocol.name}+structure-cheat",
    )


def sale_invalid_solution(protocol: ProtocolDefinition) -> ProtocolDefinition:
    """A 返回缺了一个顶点的回路。"""

    def replace(message: Message, ctx: PartyContext) -> Message:
        witness = read_vertex_sequence(PayloadReader(message.payload))
        return Message(tags.SALE_SOLUTION, encode_vertex_sequence(witness[:-1]))

    return protocol.with_parties(
        party_a=substitute(protocol.party_a, SALE_RESPONSE, replace),
        name=f"{protocol.name}+invalid-solution",
    )


__all__ = [
    "dlp_structure_cheat",
    "graph_ot_bad_isomorphism",
    "rabin_nonroot",
    "sale_invalid_solution",
]
