"""零知识模拟器（带回卷）。

模拟器不知道秘密：先猜挑战 r̂，按 r̂ 准备可被接受的 (承诺, 应答)，
再向诚实验证方索取挑战；不一致时把验证方随机流回卷到本轮开始重试。
输出分布与真实会话一致，每轮期望尝试次数为 2。
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from ..common.codec import decode_ints, encode_int
from ..common.exceptions import ProtocolError
from ..common.log import logger
from ..common.rng import RandomStream
from ..graphs import Graph, apply_perm, encode_vertex_sequence, random_perm
from ..numtheory import mod_inverse, sample_unit
from .graph import fake_cycle_graph, graph_round_ok
from .qrp import qrp_round_ok
from .rounds import check_rounds

DEFAULT_RETRY_BUDGET = 128


class SimulationBudgetExceeded(ProtocolError):
    """回卷次数超出预算。"""


@dataclass(frozen=True, slots=True)
class SimulatedRound:
    commitment: bytes
    challenge: int
    response: bytes


@dataclass(frozen=True, slots=True)
class SimulatedTranscript:
    rounds: tuple[SimulatedRound, ...]
    tries: tuple[int, ...]


class VerifierChallenger:
    """诚实验证方的挑战来源；随机流可保存与回卷。"""

    def __init__(self, seed: int):
        self.rng = RandomStream(seed)

    def checkpoint(self) -> object:
        return self.rng.getstate()

    def rewind(self, state: object) -> None:
        self.rng.setstate(state)

    def challenge(self) -> int:
        return self.rng.bit()


def _simulate(
    prepare: Callable[[int, RandomStream], tuple[bytes, bytes]],
    m: int,
    seed_sim: int,
    seed_verifier: int,
    retry_budget: int,
    name: str,
) -> SimulatedTranscript:
    check_rounds(m)
    rng = RandomStream(seed_sim)
    verifier = VerifierChallenger(seed_verifier)
    rounds, tries = [], []
    for t in range(m):
        state = verifier.checkpoint()
        for attempt in range(1, retry_budget + 1):
            guess = rng.bit()
            commitment, response = prepare(guess, rng)
            verifier.rewind(state)
            challenge = verifier.challenge()
            if challenge == guess:
                rounds.append(SimulatedRound(commitment, challenge, response))
                tries.append(attempt)
                break
        else:
            raise SimulationBudgetExceeded(f"{name} 第 {t} 轮回卷 {retry_budget} 次仍未成功")
    logger.debug("🎲 %s 模拟完成: %d 轮, 尝试 %d 次", name, m, sum(tries))
    return SimulatedTranscript(tuple(rounds), tuple(tries))


def qrp_zkp_simulate(
    n: int,
    v: int,
    m: int,
    seed_sim: int,
    seed_verifier: int,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> SimulatedTranscript:
    """只用公开的 (N, v)：y 随机，a ≡ y²·v^{−r̂}。"""
    v_inverse = mod_inverse(v, n)

    def prepare(guess: int, rng: RandomStream) -> tuple[bytes, bytes]:
        y = sample_unit(n, rng)
        a = y * y * pow(v_inverse, guess, n) % n
        return encode_int(a), encode_int(y)

    return _simulate(prepare, m, seed_sim, seed_verifier, retry_budget, "QRP 证明")


def graph_zkp_simulate(
    graph: Graph,
    m: int,
    seed_sim: int,
    seed_verifier: int,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> SimulatedTranscript:
    """只用公开的 G：猜 0 时给出真副本与置换，猜 1 时给出同规模的植入回路图。"""

    def prepare(guess: int, rng: RandomStream) -> tuple[bytes, bytes]:
        if guess == 0:
            perm = random_perm(graph.n, rng)
            return apply_perm(graph, perm).encode(), perm.encode()
        fake = fake_cycle_graph(graph, rng)
        return fake.graph.encode(), encode_vertex_sequence(fake.witness)

    return _simulate(prepare, m, seed_sim, seed_verifier, retry_budget, "图证明")


def qrp_simulated_ok(transcript: SimulatedTranscript, n: int, v: int) -> bool:
    return all(
        qrp_round_ok(
            decode_ints(r.commitment, 1)[0], r.challenge, decode_ints(r.response, 1)[0], v, n
        )
        for r in transcript.rounds
    )


def graph_simulated_ok(transcript: SimulatedTranscript, graph: Graph) -> bool:
    return all(
        graph_round_ok(graph, r.commitment, r.challenge, r.response) for r in transcript.rounds
    )


__all__ = [
    "DEFAULT_RETRY_BUDGET",
    "SimulatedRound",
    "SimulatedTranscript",
    "SimulationBudgetExceeded",
    "VerifierChallenger",
    "graph_simulated_ok",
    "graph_zkp_simulate",
    "qrp_simulated_ok",
    "qrp_zkp_simulate",
]
