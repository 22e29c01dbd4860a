# ruff: noqa: E402
"""Tests for the QRP, DLP and graph bit commitments and their sessions.

Run from the repository root:
    python tests/test_commitment.py -v
"""

from __future__ import annotations

import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.commitment import (
    DLP,
    QRP,
    Commitment,
    Opening,
    QrpCommitter,
    QrpParams,
    dlp_commit,
    dlp_verify,
    graph_commit,
    graph_verify,
    make_commit_dlp,
    make_commit_graph,
    make_commit_qrp,
    qrp_commit,
    qrp_verify,
    qrp_witness,
    verify_commitment,
)
from core.common import ParameterError, RandomStream, decode_ints, encode_int, encode_ints
from core.graphs import Graph, gen_noniso_pair
from core.numtheory import BlumModulus, FieldContext, gen_blum, is_qr, jacobi, sample_nonresidue_jacobi1
from core.session import Message, check_correctness, run_session, substitute

SMALL = BlumModulus(3, 7, blum=True)


def flip_opening(message: Message, ctx) -> Message:
    opening = Opening.decode(message.payload)
    return Message(message.tag, Opening(1 - opening.committed_value, opening.randomness).encode())


class TestQrpScheme(unittest.TestCase):
    def test_hand_trace_mod_21(self):
        params = QrpParams(SMALL, 5)
        c = qrp_witness(1, 2, 5, 21)
        commitment = Commitment(QRP, params.encode(), encode_int(c))

        self.assertEqual(c, 20)
        self.assertTrue(qrp_verify(commitment, Opening(1, encode_ints(2, 3, 7))))
        rejected = qrp_verify(commitment, Opening(0, encode_ints(2, 3, 7)))
        self.assertFalse(rejected)
        self.assertEqual(rejected.failed_predicate, "c ≡ r²·y^b")

    def test_residue_y_is_rejected(self):
        with self.assertRaises(ParameterError):
            QrpParams(SMALL, 4)

    def test_witness_residuosity_tracks_bit(self):
        rng = RandomStream(1)
        modulus = gen_blum(24, rng)
        params = QrpParams(modulus, sample_nonresidue_jacobi1(modulus, rng))
        for b in (0, 1):
            for _ in range(10):
                committed = qrp_commit(b, params, rng)
                (c,) = decode_ints(committed.commitment.witness, 1)
                self.assertEqual(jacobi(c, modulus.modulus), 1)
                self.assertEqual(is_qr(c, modulus), b == 0)
                self.assertTrue(verify_commitment(committed.commitment, committed.opening))

    def test_wrong_factors_are_rejected(self):
        committed = qrp_commit(1, QrpParams(SMALL, 5), RandomStream(2))
        r, _, _ = decode_ints(committed.opening.randomness, 3)

        result = qrp_verify(committed.commitment, Opening(1, encode_ints(r, 1, 21)))
        self.assertEqual(result.failed_predicate, "p·q = N")

    def test_committer_is_single_use(self):
        committer = QrpCommitter(QrpParams(SMALL, 5))
        with self.assertRaises(ParameterError):
            committer.open()
        committer.commit(0, RandomStream(3))
        with self.assertRaises(ParameterError):
            committer.commit(1, RandomStream(3))
        committer.open()
        self.assertTrue(committer.burned)
        with self.assertRaises(ParameterError):
            committer.open()


class TestDlpScheme(unittest.TestCase):
    def test_hand_trace_p7_g3(self):
        committed = dlp_commit(4, FieldContext(7, 3))

        self.assertEqual(decode_ints(committed.commitment.witness, 1), (4,))
        self.assertTrue(dlp_verify(committed.commitment, committed.opening))
        self.assertEqual(dlp_verify(committed.commitment, Opening(5, b"")).failed_predicate, "y ≡ g^x")
        self.assertEqual(dlp_verify(committed.commitment, Opening(1, b"")).failed_predicate, "1 < x < p−1")

    def test_non_generator_is_rejected(self):
        commitment = Commitment(DLP, encode_ints(7, 2), encode_int(4))

        self.assertEqual(dlp_verify(commitment, Opening(2, b"")).failed_predicate, "g 为生成元")
        with self.assertRaises(ParameterError):
            dlp_commit(6, FieldContext(7, 3))


class TestGraphScheme(unittest.TestCase):
    def test_commit_and_reject_flipped_bit(self):
        rng = RandomStream(4)
        pair = gen_noniso_pair(8, rng)
        for b in (0, 1):
            committed = graph_commit(b, pair, rng)
            self.assertTrue(graph_verify(committed.commitment, committed.opening))
            flipped = Opening(1 - b, committed.opening.randomness)
            self.assertEqual(
                graph_verify(committed.commitment, flipped).failed_predicate,
                "置换把所选图映射到见证",
            )

    def test_pair_needs_degree_certificate(self):
        square = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        with self.assertRaises(ParameterError):
            graph_commit(0, (square, square), RandomStream(5))

    def test_unknown_scheme(self):
        result = verify_commitment(Commitment("pedersen", b"", b""), Opening(0, b""))
        self.assertEqual(result.failed_predicate, "未知方案")


class TestCommitSessions(unittest.TestCase):
    def test_sessions_output_committed_value(self):
        cases = [
            (make_commit_qrp(16), 1),
            (make_commit_qrp(16), 0),
            (make_commit_qrp(16, zk_nonresidue=True, rounds=8), 1),
            (make_commit_dlp(16), 1234),
            (make_commit_graph(8), 1),
        ]
        for protocol, value in cases:
            with self.subTest(protocol=protocol.name, value=value):
                result = run_session(protocol, value, None, 10, 20).raise_for_abort()
                self.assertEqual(result.outputs, (None, value))
                self.assertTrue(check_correctness(result, protocol))

    def test_random_dlp_value(self):
        protocol = make_commit_dlp(16)
        result = run_session(protocol, None, None, 1, 2).raise_for_abort()

        self.assertTrue(check_correctness(result, protocol))
        self.assertEqual(result.outputs[1], result.outcome_a.local_view.notes["value"])

    def test_flipped_opening_is_caught(self):
        for protocol in (make_commit_qrp(16), make_commit_graph(8), make_commit_qrp(16, zk_nonresidue=True, rounds=4)):
            with self.subTest(protocol=protocol.name):
                cheat = protocol.with_parties(party_a=substitute(protocol.party_a, "Opening", flip_opening))
                result = run_session(cheat, 1, None, 3, 4)
                self.assertEqual(result.abort.kind, "verification")
                self.assertEqual((result.abort.party, result.abort.step), ("B", "Verification"))
                self.assertIn("c ≡ r²·y^b" if protocol.name != "commit-graph" else "置换", result.abort.reason)

    def test_residue_y_fails_nonresidue_proof(self):
        protocol = make_commit_qrp(16, zk_nonresidue=True, rounds=12)

        def residue_y(message: Message, ctx) -> Message:
            n, _ = decode_ints(message.payload, 2)
            return Message(message.tag, encode_ints(n, 4))

        cheat = protocol.with_parties(party_a=substitute(protocol.party_a, "Set-up", residue_y))
        result = run_session(cheat, 0, None, 5, 6)

        self.assertEqual(result.abort.kind, "verification")
        self.assertEqual((result.abort.party, result.abort.step), ("B", "Set-up"))


if __name__ == "__main__":
    unittest.main(verbosity=2)
