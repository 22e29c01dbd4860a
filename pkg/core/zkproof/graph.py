"""基于图的零知识证明（知道哈密顿回路）。

流程：
1. Set-up：A 公开图 G 与轮数 m；
2. 每轮 A 取随机置换 π，承诺 G' = π(G)；
3. 挑战 0：A 公开 π，B 检查 π(G) = G'；
   挑战 1：A 公开 G' 中的回路 π(w)，B 检查它是 G' 的哈密顿回路。
"""

from __future__ import annotations

from ..common.codec import PayloadReader, encode_u8
from ..common.exceptions import ParameterError, PayloadError
from ..common.log import logger
from ..common.rng import RandomStream
from ..graphs import (
    Graph,
    Permutation,
    PlantedSolution,
    apply_perm,
    decode_graph,
    decode_perm,
    encode_vertex_sequence,
    gen_hamiltonian_graph,
    gen_hamiltonian_with_degrees,
    normalize_cycle,
    random_perm,
    read_vertex_sequence,
    validate_cycle,
)
from ..session.party import PartyContext, PartyScript, ProtocolDefinition
from . import tags
from .qrp import honest_expected
from .rounds import DEFAULT_ROUNDS, STEP_SETUP, check_rounds, prove_rounds, verify_rounds


def fake_cycle_graph(g: Graph, rng: RandomStream) -> PlantedSolution:
    """与 G 度序列相同的新植入回路图（不知道 G 的解时的替身）。

    G 的度序列容纳不了哈密顿回路时，退化为只保证顶点数、边数相同。
    """
    try:
        return gen_hamiltonian_with_degrees(g.degrees(), rng)
    except ParameterError:
        logger.debug("🎭 度序列无法植入回路，替身图只匹配规模: n=%d", g.n)
        return gen_hamiltonian_graph(g.n, len(g.edges) - g.n, rng)


def graph_round_ok(g: Graph, commitment: bytes, challenge: int, response: bytes) -> bool:
    copy = decode_graph(commitment)
    if copy.n != g.n:
        return False
    if challenge == 0:
        perm = decode_perm(response)
        return perm.n == g.n and apply_perm(g, perm) == copy
    reader = PayloadReader(response)
    cycle = read_vertex_sequence(reader)
    reader.finish()
    return validate_cycle(copy, cycle)


# region 轮次实现
class GraphRoundProver:
    def __init__(self, solution: PlantedSolution):
        self.solution = solution
        self._perm: Permutation | None = None

    def commit(self, rng: RandomStream) -> bytes:
        self._perm = random_perm(self.solution.graph.n, rng)
        return apply_perm(self.solution.graph, self._perm).encode()

    def respond(self, challenge: int) -> bytes:
        assert self._perm is not None
        if challenge == 0:
            return self._perm.encode()
        perm = self._perm
        return encode_vertex_sequence(normalize_cycle(tuple(perm(v) for v in self.solution.witness)))


class GraphCheatingProver:
    """不知道回路：猜 0 时承诺真副本，猜 1 时承诺替身图；只能应答猜中的挑战。"""

    def __init__(self, graph: Graph):
        self.graph = graph
        self._guess = 0
        self._perm: Permutation | None = None
        self._fake: PlantedSolution | None = None

    def commit(self, rng: RandomStream) -> bytes:
        self._guess = rng.bit()
        if self._guess == 0:
            self._perm = random_perm(self.graph.n, rng)
            return apply_perm(self.graph, self._perm).encode()
        self._fake = fake_cycle_graph(self.graph, rng)
        return self._fake.graph.encode()

    def respond(self, challenge: int) -> bytes:
        if challenge != self._guess:
            # 放弃本轮：空置换 / 空回路都不可能通过检查
            return Permutation(()).encode() if challenge == 0 else encode_vertex_sequence(())
        if challenge == 0:
            assert self._perm is not None
            return self._perm.encode()
        assert self._fake is not None
        return encode_vertex_sequence(self._fake.witness)


class GraphRoundVerifier:
    def __init__(self, graph: Graph):
        self.graph = graph

    def check(self, commitment: bytes, challenge: int, response: bytes) -> bool:
        return graph_round_ok(self.graph, commitment, challenge, response)


# endregion


# region 协议方
def _party_a(m: int, cheating: bool):
    def party(ctx: PartyContext) -> PartyScript:
        solution: PlantedSolution = ctx.input
        yield ctx.send(STEP_SETUP, tags.ZK_SETUP, solution.graph.encode() + encode_u8(m))
        prover = GraphCheatingProver(solution.graph) if cheating else GraphRoundProver(solution)
        return (yield from prove_rounds(ctx, prover, m))

    return party


def _party_b(m: int):
    def party(ctx: PartyContext) -> PartyScript:
        message = yield ctx.recv(STEP_SETUP, tags.ZK_SETUP)
        reader = PayloadReader(message.payload)
        graph = Graph.read(reader)
        rounds = reader.read_u8()
        reader.finish()
        if rounds != m:
            ctx.fail(STEP_SETUP, f"轮数不一致: 约定 {m}, 收到 {rounds}")
        if graph.n < 3:
            raise PayloadError("图太小，不存在哈密顿回路")
        return (yield from verify_rounds(ctx, GraphRoundVerifier(graph), m))

    return party


# endregion


def make_graph_zkp(m: int = DEFAULT_ROUNDS, *, cheating: bool = False) -> ProtocolDefinition:
    """input_a 为 PlantedSolution（作弊证明方只使用其中的图）；input_b 为 None。"""
    check_rounds(m)
    return ProtocolDefinition(
        name="zkp-graph-cheat" if cheating else "zkp-graph",
        family=tags.FAMILY,
        description=(
            "不知道回路的证明方猜测挑战" if cheating else "图零知识证明：证明知道哈密顿回路"
        ),
        party_a=_party_a(m, cheating),
        party_b=_party_b(m),
        tags=tags.describe(
            tags.ZK_SETUP, tags.ZK_COMMITMENT, tags.ZK_CHALLENGE, tags.ZK_RESPONSE, tags.ZK_VERDICT
        ),
        output_domains=("裁决（接受/拒绝, 失败轮号）", "裁决（接受/拒绝, 失败轮号）"),
        expected=None if cheating else honest_expected(m),
        params={"m": m},
    )


__all__ = [
    "GraphCheatingProver",
    "GraphRoundProver",
    "GraphRoundVerifier",
    "fake_cycle_graph",
    "graph_round_ok",
    "make_graph_zkp",
]
