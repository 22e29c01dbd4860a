# ruff: noqa: E402
"""Tests for the interactive proofs: QRP identification, graph cycles, non-residuosity and simulators.

Run from the repository root:
    python tests/test_zkproof.py -v
"""

from __future__ import annotations

import math
import sys
import unittest
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.common import (
    ParameterError,
    PayloadError,
    PayloadReader,
    RandomStream,
    decode_ints,
    encode_int,
    encode_u8,
)
from core.common.rng import derive_seed
from core.graphs import (
    decode_graph,
    decode_perm,
    gen_hamiltonian_graph,
    invert,
    read_vertex_sequence,
    validate_cycle,
)
from core.numtheory import gen_blum, sample_nonresidue_jacobi1, sample_unit
from core.session import Message, check_correctness, compare_distributions, run_session, substitute
from core.zkproof import (
    GraphRoundProver,
    QnrInstance,
    QrpIdentity,
    QrpRoundProver,
    SimulationBudgetExceeded,
    ZkVerdict,
    extract_secret,
    fake_cycle_graph,
    gen_qrp_identity,
    graph_simulated_ok,
    graph_zkp_simulate,
    make_graph_zkp,
    make_qnr_proof,
    make_qrp_zkp,
    qrp_simulated_ok,
    qrp_zkp_simulate,
)
from core.zkproof.rounds import check_rounds

# 试验次数已缩减，容差取 4σ
SIGMAS = 4.0


def seeds(index: int) -> tuple[int, int]:
    return derive_seed(index, "zk/A"), derive_seed(index, "zk/B")


def within(rate: float, p: float, samples: int) -> bool:
    return abs(rate - p) <= SIGMAS * math.sqrt(p * (1 - p) / samples)


def qrp_rounds(result) -> list[tuple[int, int, int]]:
    """从会话记录中取出每轮的 (a, 挑战, y)。"""
    by_label = {record.label: record.message.payload for record in result.transcript}
    rounds = []
    t = 0
    while f"Commitment[{t}]" in by_label:
        (a,) = decode_ints(by_label[f"Commitment[{t}]"][1:], 1)
        challenge = by_label[f"Challenge[{t}]"][1]
        (y,) = decode_ints(by_label[f"Response[{t}]"][1:], 1)
        rounds.append((a, challenge, y))
        t += 1
    return rounds


class TestVerdict(unittest.TestCase):
    def test_failure_round_is_first_failure(self):
        verdict = ZkVerdict.from_results((True, False, True, False))

        self.assertFalse(verdict.accepted)
        self.assertEqual(verdict.failure_round, 1)
        self.assertEqual(ZkVerdict.decode(verdict.encode()), verdict)

    def test_inconsistent_verdict_is_rejected(self):
        payload = bytearray(ZkVerdict.from_results((True, True)).encode())
        payload[0] = 0
        with self.assertRaises(PayloadError):
            ZkVerdict.decode(bytes(payload))

    def test_round_bounds(self):
        for m in (0, 256):
            with self.assertRaises(ParameterError):
                check_rounds(m)


class TestQrpProof(unittest.TestCase):
    def setUp(self):
        self.identity = gen_qrp_identity(32, RandomStream(1))

    def test_honest_prover_is_accepted(self):
        protocol = make_qrp_zkp(20)
        for index in range(5):
            result = run_session(protocol, self.identity, None, *seeds(index)).raise_for_abort()
            verdict_a, verdict_b = result.outputs
            self.assertTrue(verdict_b.accepted)
            self.assertEqual(verdict_a, verdict_b)
            self.assertTrue(check_correctness(result, protocol))

    def test_cheating_prover_passes_half_the_rounds(self):
        protocol = make_qrp_zkp(10, cheating=True)
        passed = total = accepted = 0
        for index in range(100):
            verdict = run_session(protocol, self.identity, None, *seeds(index)).raise_for_abort().outputs[1]
            passed += sum(verdict.round_results)
            total += verdict.rounds
            accepted += verdict.accepted

        self.assertTrue(within(passed / total, 0.5, total), passed)
        self.assertLessEqual(accepted, 2)

    def test_single_round_soundness_error_is_one_half(self):
        protocol = make_qrp_zkp(1, cheating=True)
        trials = 200
        accepted = sum(
            run_session(protocol, self.identity, None, *seeds(i)).outputs[1].accepted
            for i in range(trials)
        )

        self.assertTrue(within(accepted / trials, 0.5, trials), accepted)

    def test_two_answers_to_one_commitment_reveal_a_root(self):
        prover = QrpRoundProver(self.identity)
        prover.commit(RandomStream(2))
        (y0,) = decode_ints(prover.respond(0), 1)
        (y1,) = decode_ints(prover.respond(1), 1)

        root = extract_secret(y0, y1, self.identity.n)
        self.assertEqual(root * root % self.identity.n, self.identity.v)

    def test_identity_validation(self):
        with self.assertRaises(ParameterError):
            QrpIdentity(21, 2, 5)
        with self.assertRaises(ParameterError):
            QrpIdentity.from_secret(21, 7)

    def test_round_count_mismatch_is_detected(self):
        honest = make_qrp_zkp(4)
        verifier = make_qrp_zkp(5)
        protocol = honest.with_parties(party_b=verifier.party_b)

        result = run_session(protocol, self.identity, None, 1, 2)

        self.assertEqual((result.abort.kind, result.abort.step), ("verification", "Set-up"))


class TestQrpSimulator(unittest.TestCase):
    def test_simulated_transcript_is_accepted_with_two_tries_per_round(self):
        identity = gen_qrp_identity(32, RandomStream(3))
        m = 200

        simulated = qrp_zkp_simulate(identity.n, identity.v, m, 4, 5)

        self.assertTrue(qrp_simulated_ok(simulated, identity.n, identity.v))
        self.assertEqual(len(simulated.rounds), m)
        mean_tries = sum(simulated.tries) / m
        # 几何分布 p = 1/2：均值 2，方差 2
        self.assertLessEqual(abs(mean_tries - 2.0), SIGMAS * math.sqrt(2.0 / m))

    def test_simulated_rounds_match_real_rounds_in_distribution(self):
        identity = QrpIdentity.from_secret(21, 2)
        real: Counter = Counter()
        protocol = make_qrp_zkp(200)
        for index in range(10):
            result = run_session(protocol, identity, None, *seeds(index)).raise_for_abort()
            real.update(qrp_rounds(result))

        simulated = qrp_zkp_simulate(21, identity.v, 2000, 6, 7)
        fake = Counter(
            (decode_ints(r.commitment, 1)[0], r.challenge, decode_ints(r.response, 1)[0])
            for r in simulated.rounds
        )

        self.assertEqual(sum(real.values()), 2000)
        self.assertGreater(compare_distributions(real, fake), 1e-4)

    def test_retry_budget(self):
        identity = gen_qrp_identity(32, RandomStream(8))
        with self.assertRaises(SimulationBudgetExceeded):
            qrp_zkp_simulate(identity.n, identity.v, 40, 1, 2, retry_budget=1)


class TestGraphProof(unittest.TestCase):
    def setUp(self):
        self.solution = gen_hamiltonian_graph(8, 6, RandomStream(9))

    def test_honest_prover_is_accepted(self):
        protocol = make_graph_zkp(10)
        result = run_session(protocol, self.solution, None, 1, 2).raise_for_abort()

        self.assertTrue(result.outputs[1].accepted)
        self.assertTrue(check_correctness(result, protocol))

    def test_cheating_prover_passes_half_the_rounds(self):
        protocol = make_graph_zkp(10, cheating=True)
        passed = total = 0
        for index in range(50):
            verdict = run_session(protocol, self.solution, None, *seeds(index)).raise_for_abort().outputs[1]
            passed += sum(verdict.round_results)
            total += verdict.rounds

        self.assertTrue(within(passed / total, 0.5, total), passed)

    def test_two_answers_reveal_the_cycle(self):
        prover = GraphRoundProver(self.solution)
        copy = decode_graph(prover.commit(RandomStream(10)))
        perm = decode_perm(prover.respond(0))
        cycle = read_vertex_sequence(PayloadReader(prover.respond(1)))

        self.assertTrue(validate_cycle(copy, cycle))
        inverse = invert(perm)
        self.assertTrue(validate_cycle(self.solution.graph, [inverse(v) for v in cycle]))

    def test_simulator(self):
        simulated = graph_zkp_simulate(self.solution.graph, 20, 11, 12)

        self.assertTrue(graph_simulated_ok(simulated, self.solution.graph))
        self.assertEqual({r.challenge for r in simulated.rounds}, {0, 1})

    def test_simulated_copies_keep_the_degree_profile(self):
        degrees = self.solution.graph.degree_sequence()
        simulated = graph_zkp_simulate(self.solution.graph, 30, 13, 14)

        for r in simulated.rounds:
            with self.subTest(challenge=r.challenge):
                self.assertEqual(decode_graph(r.commitment).degree_sequence(), degrees)

    def test_cheating_commitments_keep_the_degree_profile(self):
        degrees = self.solution.graph.degree_sequence()
        rng = RandomStream(15)
        for _ in range(20):
            fake = fake_cycle_graph(self.solution.graph, rng)
            self.assertEqual(fake.graph.degree_sequence(), degrees)
            self.assertTrue(validate_cycle(fake.graph, fake.witness))


class TestNonResidueProof(unittest.TestCase):
    def setUp(self):
        rng = RandomStream(13)
        self.modulus = gen_blum(24, rng)
        self.nonresidue = sample_nonresidue_jacobi1(self.modulus, rng)
        unit = sample_unit(self.modulus.modulus, rng)
        self.residue = unit * unit % self.modulus.modulus

    def test_nonresidue_is_accepted(self):
        protocol = make_qnr_proof(20)
        result = run_session(protocol, QnrInstance(self.modulus, self.nonresidue), None, 1, 2).raise_for_abort()

        self.assertTrue(result.outputs[1].accepted)
        self.assertTrue(check_correctness(result, protocol))

    def test_residue_is_rejected(self):
        protocol = make_qnr_proof(20)
        result = run_session(protocol, QnrInstance(self.modulus, self.residue), None, 3, 4).raise_for_abort()

        self.assertFalse(result.outputs[1].accepted)
        self.assertTrue(check_correctness(result, protocol))

    def test_prover_answers_any_query(self):
        # 验证方不证明自己知道 r：任意 w 的剩余性都会被如实回答
        protocol = make_qnr_proof(1)
        instance = QnrInstance(self.modulus, self.nonresidue)
        for query, answer in ((self.residue, 0), (self.nonresidue, 1)):
            with self.subTest(answer=answer):

                def ask(message: Message, ctx, query=query) -> Message:
                    return Message(message.tag, encode_u8(0) + encode_int(query))

                cheat = protocol.with_parties(party_b=substitute(protocol.party_b, "Challenge[0]", ask))
                result = run_session(cheat, instance, None, 5, 6)
                reply = next(r for r in result.transcript if r.label == "Response[0]")

                self.assertEqual(reply.message.payload, encode_u8(0) + encode_u8(answer))


if __name__ == "__main__":
    unittest.main(verbosity=2)
