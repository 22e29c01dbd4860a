"""基于图的 1-2 不经意传输与秘密出售。

流程：
1. Set-up：A 公开 n 个图 G_1..G_n（她知道每个图中的哈密顿回路）；
2. Challenge：B 为每个图生成随机重标号副本，打乱顺序后连同指向所选副本的指针发送；
3. Response：A 用暴力同构把自己的解映射到指针所指副本上发回；
4. Verification：B 用自己的重标号把解映射回原图并校验回路。
n = 2 即图上的 1-2 不经意传输。
"""

from __future__ import annotations

from collections.abc import Sequence

from ..common.codec import PayloadReader, encode_u16
from ..common.exceptions import ParameterError
from ..common.rng import RandomStream
from ..graphs import (
    Graph,
    Permutation,
    PlantedSolution,
    apply_perm,
    encode_vertex_sequence,
    find_isomorphism,
    gen_hamiltonian_graph,
    gen_twin_hamiltonian,
    invert,
    normalize_cycle,
    random_perm,
    read_vertex_sequence,
    validate_cycle,
)
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags

STEP_SETUP = "Set-up"
STEP_CHALLENGE = "Challenge"
STEP_RESPONSE = "Response"
STEP_VERIFICATION = "Verification"


def gen_sale_instances(
    count: int, n: int, noise_edges: int, rng: RandomStream
) -> tuple[PlantedSolution, ...]:
    """count 个顶点数、边数、度序列都相同的带解图。"""
    if count < 2:
        raise ParameterError(f"秘密出售至少需要 2 个图: {count}")
    base = gen_hamiltonian_graph(n, noise_edges, rng)
    return (base, *(gen_twin_hamiltonian(base, rng) for _ in range(count - 1)))


def map_solution(
    base: PlantedSolution, copy: Graph
) -> tuple[int, ...] | None:
    phi = find_isomorphism(base.graph, copy)
    if phi is None:
        return None
    return normalize_cycle(tuple(phi(v) for v in base.witness))


def serve(
    solutions: Sequence[PlantedSolution], copy: Graph
) -> tuple[int, tuple[int, ...]] | None:
    """A 的应答：第一个与副本同构的公开图及映射过去的解。"""
    for index, solution in enumerate(solutions):
        if solution.graph.n != copy.n:
            continue
        witness = map_solution(solution, copy)
        if witness is not None:
            return index, witness
    return None


def pull_back(witness: Sequence[int], sigma: Permutation) -> tuple[int, ...]:
    inverse = invert(sigma)
    return normalize_cycle(tuple(inverse(v) for v in witness))


# region 协议方
def sale_sender(
    ctx: PartyContext, solutions: Sequence[PlantedSolution]
) -> PartyScript:
    payload = encode_u16(len(solutions)) + b"".join(s.graph.encode() for s in solutions)
    yield ctx.send(STEP_SETUP, tags.SALE_GRAPHS, payload)

    message = yield ctx.recv(STEP_CHALLENGE, tags.SALE_COPIES)
    reader = PayloadReader(message.payload)
    count = reader.read_u16()
    copies = [Graph.read(reader) for _ in range(count)]
    pointer = reader.read_u16()
    reader.finish()
    if count != len(solutions) or pointer >= count:
        ctx.fail(STEP_CHALLENGE, "副本数量或指针非法")

    served = serve(solutions, copies[pointer])
    if served is None:
        ctx.fail(STEP_CHALLENGE, "指针所指副本与任何公开图都不同构")
    ctx.remember("served", served[0])
    yield ctx.send(STEP_RESPONSE, tags.SALE_SOLUTION, encode_vertex_sequence(served[1]))
    return None


def sale_receiver(ctx: PartyContext, choice: int) -> PartyScript:
    message = yield ctx.recv(STEP_SETUP, tags.SALE_GRAPHS)
    reader = PayloadReader(message.payload)
    count = reader.read_u16()
    graphs = [Graph.read(reader) for _ in range(count)]
    reader.finish()
    if not 0 <= choice < count:
        raise ParameterError(f"选择 {choice} 超出 [0, {count})")

    sigmas = [random_perm(g.n, ctx.rng) for g in graphs]
    copies = [apply_perm(g, s) for g, s in zip(graphs, sigmas, strict=True)]
    order = list(range(count))
    ctx.rng.shuffle(order)
    pointer = order.index(choice)
    ctx.remember("choice", choice)
    ctx.remember("sigma", sigmas[choice])
    payload = (
        encode_u16(count)
        + b"".join(copies[k].encode() for k in order)
        + encode_u16(pointer)
    )
    yield ctx.send(STEP_CHALLENGE, tags.SALE_COPIES, payload)

    message = yield ctx.recv(STEP_RESPONSE, tags.SALE_SOLUTION)
    reader = PayloadReader(message.payload)
    returned = read_vertex_sequence(reader)
    reader.finish()
    if not validate_cycle(copies[choice], returned):
        ctx.fail(STEP_VERIFICATION, "返回的解在所指副本中无效")
    witness = pull_back(returned, sigmas[choice])
    if not validate_cycle(graphs[choice], witness):
        ctx.fail(STEP_VERIFICATION, "映射回原图后的解无效")
    return choice, witness


def _party_a(ctx: PartyContext) -> PartyScript:
    return (yield from sale_sender(ctx, ctx.input))


def _party_b(ctx: PartyContext) -> PartyScript:
    return (yield from sale_receiver(ctx, ctx.input))


# endregion


def _expected(
    view_a: LocalView, view_b: LocalView
) -> tuple[None, tuple[int, tuple[int, ...]]]:
    solutions: Sequence[PlantedSolution] = view_a.input
    choice = view_b.notes["choice"]
    sigma: Permutation = view_b.notes["sigma"]
    served = serve(solutions, apply_perm(solutions[choice].graph, sigma))
    assert served is not None
    return None, (choice, pull_back(served[1], sigma))


def make_secret_sale(count: int) -> ProtocolDefinition:
    """input_a 为 count 个 PlantedSolution；input_b 为选择下标。"""
    if count < 2:
        raise ParameterError(f"秘密出售至少需要 2 个图: {count}")
    name = "graph-1of2-ot" if count == 2 else "secret-sale"
    return ProtocolDefinition(
        name=name,
        family=tags.FAMILY,
        description=f"{count} 选 1 秘密出售：B 恰好得到所选图中的哈密顿回路",
        party_a=_party_a,
        party_b=_party_b,
        tags=tags.describe(tags.SALE_GRAPHS, tags.SALE_COPIES, tags.SALE_SOLUTION),
        output_domains=("无输出", "(所选下标, 该图中的哈密顿回路)"),
        expected=_expected,
        params={"count": count},
    )


def make_graph_1of2_ot() -> ProtocolDefinition:
    return make_secret_sale(2)


__all__ = [
    "gen_sale_instances",
    "make_graph_1of2_ot",
    "make_secret_sale",
    "map_solution",
    "pull_back",
    "serve",
    "sale_receiver",
    "sale_sender",
]
