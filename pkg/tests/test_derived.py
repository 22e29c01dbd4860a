# ruff: noqa: E402
"""Tests for the derived protocols: coin flipping, contract signing, secret exchange and comparison.

Run from the repository root:
    python tests/test_derived.py -v
"""

from __future__ import annotations

import math
import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.common import BitString, ParameterError, RandomStream, decode_ints, encode_ints
from core.common.rng import derive_seed
from core.derived import (
    ABORTED,
    DIFFERENT,
    POSSIBLY_EQUAL,
    SIGNED,
    CoinPuzzle,
    ComparisonInput,
    commit_coin_result,
    comparison_sums,
    comparison_verdict,
    general_coin_result,
    make_byzantine_agreement,
    make_coin_flip_commit,
    make_coin_flip_general,
    make_coin_flip_ot,
    make_coin_flip_qrp,
    make_contract_sign,
    make_contract_sign_graph,
    make_millionaires,
    make_secret_exchange_graph,
    make_string_verification,
    make_tscp_general,
    qrp_coin_check,
    qrp_coin_puzzle,
    richer_output,
)
from core.numtheory import BlumModulus, FieldContext, gen_blum
from core.oblivious import OtSecretIsomorphism
from core.session import Message, check_correctness, run_session, substitute

SMALL = BlumModulus(3, 7, blum=True)


def seeds(index: int) -> tuple[int, int]:
    return derive_seed(index, "derived/A"), derive_seed(index, "derived/B")


def within(rate: float, p: float, trials: int, sigmas: float = 4.0) -> bool:
    return abs(rate - p) <= sigmas * math.sqrt(p * (1 - p) / trials)


def run_ok(protocol, input_a, input_b, index: int):
    result = run_session(protocol, input_a, input_b, *seeds(index)).raise_for_abort()
    return result


class TestQrpCoin(unittest.TestCase):
    def test_hand_trace_mod_21(self):
        self.assertEqual(qrp_coin_puzzle(2, 21), (4, 16))
        self.assertIsNone(qrp_coin_check(21, 16, 2, 4, 3, 7))
        self.assertEqual(qrp_coin_check(21, 16, 2, 5, 3, 7), "y ≡ x²")
        self.assertEqual(qrp_coin_check(21, 16, 2, 4, 3, 5), "p·q = N 且 p, q 为不同素数")
        self.assertEqual(qrp_coin_check(65, 16, 2, 4, 5, 13), "p ≡ q ≡ 3 (mod 4)")

        result = run_session(make_coin_flip_qrp(), CoinPuzzle(SMALL, 2), 0, 1, 2).raise_for_abort()
        coin_a, coin_b = result.outputs

        self.assertEqual(coin_a, coin_b)
        self.assertEqual(coin_a.proof_data, (21, 16, 0, 2, 4, 3, 7))
        self.assertEqual((coin_a.outcome, coin_a.winner), (0, "B"))

    def test_wrong_bet_loses(self):
        result = run_session(make_coin_flip_qrp(), CoinPuzzle(SMALL, 2), 1, 1, 2).raise_for_abort()
        self.assertEqual(result.outputs[1].winner, "A")

    def test_outcome_is_fair(self):
        protocol = make_coin_flip_qrp(16)
        trials, b_wins = 200, 0
        for index in range(trials):
            result = run_ok(protocol, None, None, index)
            self.assertTrue(check_correctness(result, protocol))
            coin_a, coin_b = result.outputs
            self.assertEqual(coin_a, coin_b)
            b_wins += coin_b.winner == "B"

        self.assertTrue(within(b_wins / trials, 0.5, trials), b_wins)

    def test_wrong_y_is_caught(self):
        protocol = make_coin_flip_qrp()

        def odd_y(message: Message, ctx) -> Message:
            x, y, p, q = decode_ints(message.payload, 4)
            return Message(message.tag, encode_ints(x, y + 1, p, q))

        cheat = protocol.with_parties(party_a=substitute(protocol.party_a, "Opening", odd_y))
        result = run_session(cheat, CoinPuzzle(SMALL, 2), 1, 1, 2)

        self.assertEqual(result.abort.kind, "verification")
        self.assertEqual((result.abort.party, result.abort.step), ("B", "Verification"))
        self.assertIn("y ≡ x²", result.abort.reason)

    def test_bet_must_be_a_bit(self):
        with self.assertRaises(ParameterError):
            run_session(make_coin_flip_qrp(), CoinPuzzle(SMALL, 2), 2, 1, 2)


class TestGeneralCoin(unittest.TestCase):
    def test_hand_trace_p7_g3(self):
        self.assertEqual(FieldContext(7, 3).exp(4), 4)
        result = general_coin_result((7, 3, 4, 0, 4))
        self.assertEqual((result.outcome, result.winner), (0, "B"))
        self.assertEqual(general_coin_result((7, 3, 5, 0, 5)).winner, "A")

    def test_session_with_small_field(self):
        for index in range(10):
            result = run_ok(make_coin_flip_general(), FieldContext(7, 3), 1, index)
            coin_a, coin_b = result.outputs
            p, g, y, bet, x = coin_b.proof_data

            self.assertEqual(coin_a, coin_b)
            self.assertEqual((p, g, bet), (7, 3, 1))
            self.assertTrue(0 <= x <= 5)
            self.assertEqual(pow(3, x, 7), y)

    def test_outcome_is_fair(self):
        protocol = make_coin_flip_general(16)
        trials, ones = 200, 0
        for index in range(trials):
            result = run_ok(protocol, None, None, index)
            self.assertTrue(check_correctness(result, protocol))
            ones += result.outputs[0].outcome

        self.assertTrue(within(ones / trials, 0.5, trials), ones)

    def test_changed_x_is_caught(self):
        protocol = make_coin_flip_general()

        def other_x(message: Message, ctx) -> Message:
            (x,) = decode_ints(message.payload, 1)
            return Message(message.tag, encode_ints(x + 1))

        cheat = protocol.with_parties(party_a=substitute(protocol.party_a, "Opening", other_x))
        result = run_session(cheat, FieldContext(7, 3), 0, 3, 4)

        self.assertEqual(result.abort.kind, "verification")
        self.assertEqual((result.abort.party, result.abort.step), ("B", "Verification"))

    def test_non_generator_is_rejected(self):
        protocol = make_coin_flip_general()

        def square_g(message: Message, ctx) -> Message:
            p, g, y = decode_ints(message.payload, 3)
            return Message(message.tag, encode_ints(p, g * g % p, y))

        cheat = protocol.with_parties(party_a=substitute(protocol.party_a, "Commitment", square_g))
        result = run_session(cheat, FieldContext(7, 3), 0, 3, 4)

        self.assertEqual((result.abort.party, result.abort.step), ("B", "Commitment"))


class TestOtAndCommitCoin(unittest.TestCase):
    def test_ot_coin_outcome_rate(self):
        protocol = make_coin_flip_ot(16)
        trials, ones = 200, 0
        for index in range(trials):
            result = run_ok(protocol, None, None, index)
            self.assertTrue(check_correctness(result, protocol))
            coin_a, coin_b = result.outputs
            self.assertEqual(coin_a, coin_b)
            ones += coin_a.outcome
            self.assertEqual(coin_a.winner, "B" if coin_a.outcome else "A")

        self.assertTrue(within(ones / trials, 0.5, trials), ones)

    def test_ot_coin_false_claim_is_caught(self):
        protocol = make_coin_flip_ot()
        modulus = gen_blum(16, RandomStream(9))

        def wrong_x(message: Message, ctx) -> Message:
            (x,) = decode_ints(message.payload, 1)
            return Message(message.tag, encode_ints(x % (modulus.modulus - 1) + 1))

        cheat = protocol.with_parties(party_b=substitute(protocol.party_b, "Claim", wrong_x))
        result = run_session(cheat, modulus, None, 5, 6)

        self.assertEqual((result.abort.kind, result.abort.party), ("verification", "A"))
        self.assertEqual(result.abort.step, "Claim")

    def test_commit_coin_xor(self):
        self.assertEqual(commit_coin_result((1, 0)).winner, "A")
        self.assertEqual(commit_coin_result((1, 1)).winner, "B")
        for a in (0, 1):
            for b in (0, 1):
                result = run_ok(make_coin_flip_commit(), a, b, a * 2 + b)
                coin_a, coin_b = result.outputs
                self.assertEqual(coin_a, coin_b)
                self.assertEqual(coin_a.outcome, a ^ b)

    def test_commit_coin_is_fair_with_random_inputs(self):
        protocol = make_coin_flip_commit(16)
        trials, ones = 150, 0
        for index in range(trials):
            result = run_ok(protocol, None, None, index)
            self.assertTrue(check_correctness(result, protocol))
            ones += result.outputs[0].outcome

        self.assertTrue(within(ones / trials, 0.5, trials), ones)


class TestContractSigning(unittest.TestCase):
    def setUp(self):
        self.secret_a = gen_blum(24, RandomStream(21))
        self.secret_b = gen_blum(24, RandomStream(22))

    def test_both_sign_and_learn_factors(self):
        protocol = make_contract_sign(b"lease 2026", max_rounds=32)
        result = run_ok(protocol, self.secret_a, self.secret_b, 1)
        out_a, out_b = result.outputs

        self.assertTrue(check_correctness(result, protocol))
        self.assertEqual((out_a.status, out_b.status), (SIGNED, SIGNED))
        self.assertEqual(out_a.rounds, out_b.rounds)
        self.assertEqual(out_a.peer_secret, self.secret_b.factors)
        self.assertEqual(out_b.peer_secret, self.secret_a.factors)

    def test_zero_rounds_aborts(self):
        result = run_ok(make_contract_sign(b"c", max_rounds=0), self.secret_a, self.secret_b, 2)
        out_a, out_b = result.outputs

        self.assertEqual((out_a.status, out_b.status), (ABORTED, ABORTED))
        self.assertEqual((out_a.rounds, out_a.peer_secret), (0, None))
        self.assertEqual(len(result.transcript), 2)

    def test_negative_rounds_rejected(self):
        with self.assertRaises(ParameterError):
            make_contract_sign(b"c", max_rounds=-1)

    def test_mean_rounds_near_eight_thirds(self):
        # 两个独立 geometric(1/2) 的最大值：均值 8/3，方差 8/3
        protocol = make_contract_sign(b"mean", max_rounds=64)
        trials = 3000
        rounds = [run_ok(protocol, self.secret_a, self.secret_b, i).outputs[0].rounds for i in range(trials)]
        mean = sum(rounds) / trials

        self.assertLessEqual(abs(mean - 8 / 3), 4 * math.sqrt(8 / 3 / trials), mean)

    def test_different_contracts_do_not_mix(self):
        protocol = make_contract_sign(b"contract one")
        other = make_contract_sign(b"contract two")
        mixed = protocol.with_parties(party_b=other.party_b)
        result = run_session(mixed, self.secret_a, self.secret_b, 3, 4)

        self.assertEqual((result.abort.kind, result.abort.party), ("verification", "B"))

    def test_graph_variant(self):
        rng = RandomStream(30)
        secret_a = OtSecretIsomorphism.generate(6, rng)
        secret_b = OtSecretIsomorphism.generate(6, rng)
        protocol = make_contract_sign_graph(b"graph contract", max_rounds=32)
        result = run_ok(protocol, secret_a, secret_b, 5)
        out_a, out_b = result.outputs

        self.assertTrue(check_correctness(result, protocol))
        self.assertTrue(out_a.signed and out_b.signed)
        self.assertEqual(out_a.peer_secret, secret_b.pi)
        self.assertEqual(out_b.peer_secret, secret_a.pi)


class TestSecretExchange(unittest.TestCase):
    def setUp(self):
        rng = RandomStream(40)
        self.secret_a = OtSecretIsomorphism.generate(6, rng)
        self.secret_b = OtSecretIsomorphism.generate(6, rng)

    def test_secrets_are_exchanged(self):
        protocol = make_secret_exchange_graph(m=10)
        for index in range(5):
            result = run_ok(protocol, self.secret_a, self.secret_b, index)
            got_a, got_b = result.outputs

            self.assertTrue(check_correctness(result, protocol))
            if got_a.obtained:
                self.assertEqual(got_a.secret, self.secret_b.pi)
            if got_b.obtained:
                self.assertEqual(got_b.secret, self.secret_a.pi)

    def test_zero_rounds_sends_nothing(self):
        result = run_ok(make_secret_exchange_graph(m=0), self.secret_a, self.secret_b, 1)

        self.assertEqual(result.outputs, (None, None))
        self.assertEqual(len(result.transcript), 0)

    def test_single_round_success_rate(self):
        protocol = make_secret_exchange_graph(m=1)
        trials, obtained = 100, 0
        for index in range(trials):
            result = run_ok(protocol, self.secret_a, self.secret_b, index)
            obtained += result.outputs[1].obtained

        self.assertTrue(within(obtained / trials, 0.5, trials), obtained)


class TestComparison(unittest.TestCase):
    def test_sums_equal_for_equal_secrets(self):
        rng = RandomStream(50)
        secret = BitString(0b1011, 4)
        a = ComparisonInput.random(secret, 8, rng)
        b = ComparisonInput.random(secret, 8, rng)

        sum_a, sum_b = comparison_sums(a, b)
        self.assertEqual(sum_a, sum_b)
        self.assertEqual(comparison_verdict(a, b), POSSIBLY_EQUAL)

    def test_false_equal_rate_halves_per_mask_bit(self):
        rng = RandomStream(53)
        trials = 2000
        for k, expected in ((1, 0.5), (2, 0.25), (4, 0.0625)):
            false_equal = 0
            for _ in range(trials):
                a = ComparisonInput.random(BitString(0b0110, 4), k, rng)
                b = ComparisonInput.random(BitString(0b0111, 4), k, rng)
                false_equal += comparison_verdict(a, b) == POSSIBLY_EQUAL
            with self.subTest(k=k):
                self.assertTrue(within(false_equal / trials, expected, trials), false_equal)

    def test_mask_count_must_match(self):
        rng = RandomStream(51)
        good = ComparisonInput.random(BitString(1, 2), 4, rng)
        with self.assertRaises(ParameterError):
            ComparisonInput(BitString(1, 3), good.masks)

    def test_general_tscp_matches_direct_verdict(self):
        protocol = make_tscp_general(4, k=4)
        rng = RandomStream(52)
        for index in range(6):
            a = ComparisonInput.random(BitString(index % 16, 4), 4, rng)
            b = ComparisonInput.random(BitString(5, 4), 4, rng)
            result = run_ok(protocol, a, b, index)

            self.assertEqual(result.outputs, (comparison_verdict(a, b),) * 2)
            self.assertTrue(check_correctness(result, protocol))

    def test_string_verification(self):
        protocol = make_string_verification(6)
        same = run_ok(protocol, BitString(0b101100, 6), BitString(0b101100, 6), 1)
        differ = run_ok(protocol, BitString(0b101100, 6), BitString(0b101101, 6), 2)

        self.assertEqual(same.outputs, (POSSIBLY_EQUAL, POSSIBLY_EQUAL))
        self.assertEqual(differ.outputs, (DIFFERENT, DIFFERENT))

    def test_length_mismatch_aborts_before_transfers(self):
        protocol = make_string_verification(4)
        result = run_session(protocol, BitString(0b1010, 4), BitString(0b10101, 5), 1, 2)

        self.assertEqual((result.abort.kind, result.abort.party), ("verification", "B"))
        self.assertEqual(result.transcript.labels(), ["Set-up/A"])

    def test_byzantine_agreement(self):
        protocol = make_byzantine_agreement()
        for bit in (0, 1):
            result = run_ok(protocol, bit, bit, bit)
            self.assertEqual(result.outputs, (POSSIBLY_EQUAL, POSSIBLY_EQUAL))

        trials, detected = 200, 0
        for index in range(trials):
            result = run_ok(protocol, 0, 1, index)
            self.assertTrue(check_correctness(result, protocol))
            detected += result.outputs[0] == DIFFERENT

        self.assertTrue(within(detected / trials, 0.5, trials), detected)

    def test_byzantine_input_must_be_bit(self):
        with self.assertRaises(ParameterError):
            run_session(make_byzantine_agreement(), 2, 0, 1, 2)


class TestMillionaires(unittest.TestCase):
    def test_richer_output_convention(self):
        self.assertEqual(richer_output("A", 1), 0)
        self.assertEqual(richer_output("B", 1), 1)
        self.assertEqual(richer_output("B", 0), 0)

    def test_hand_trace_five_against_three(self):
        protocol = make_millionaires(bit_width=4)
        result = run_ok(protocol, 5, 3, 1)

        self.assertEqual(result.outputs, (0, 0))
        self.assertEqual(result.outcome_a.local_view.notes["decided_at"], 1)
        self.assertTrue(check_correctness(result, protocol))

    def test_poorer_or_equal_a(self):
        protocol = make_millionaires(bit_width=4)

        self.assertEqual(run_ok(protocol, 3, 5, 2).outputs, (1, 1))
        self.assertEqual(run_ok(protocol, 9, 9, 3).outputs, (1, 1))

    def test_wealth_out_of_range(self):
        with self.assertRaises(ParameterError):
            run_session(make_millionaires(bit_width=4), 16, 3, 1, 2)
        with self.assertRaises(ParameterError):
            make_millionaires(bit_width=0)


if __name__ == "__main__":
    unittest.main(verbosity=2)
