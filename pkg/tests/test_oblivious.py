# ruff: noqa: E402
"""Tests for the oblivious transfer family: Rabin, graph, DLP 1-of-2, secret sale and composition.

Run from the repository root:
    python tests/test_oblivious.py -v
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

from core.common import BitString, ParameterError, RandomStream, decode_ints
from core.common.rng import derive_seed
from core.graphs import Permutation, apply_perm, compose, invert, validate_cycle
from core.numtheory import BlumModulus, four_square_roots, gen_blum, public_dlp_params
from core.oblivious import (
    OtSecretIsomorphism,
    TwoSecrets,
    dlp_structure_cheat,
    gen_sale_instances,
    graph_ot_bad_isomorphism,
    make_dlp_1of2_ot,
    make_graph_ot,
    make_ot_from_two_1of2,
    make_rabin_ot,
    make_secret_sale,
    pull_back,
    recover_secret,
    sale_invalid_solution,
)
from core.session import check_correctness, compare_distributions, run_session


def seeds(index: int) -> tuple[int, int]:
    return derive_seed(index, "test/A"), derive_seed(index, "test/B")


def within(rate: float, p: float, trials: int, sigmas: float = 4.0) -> bool:
    return abs(rate - p) <= sigmas * math.sqrt(p * (1 - p) / trials)


class TestRabinOt(unittest.TestCase):
    def test_factorization_is_transferred_about_half_the_time(self):
        protocol = make_rabin_ot()
        secret = gen_blum(24, RandomStream(1))
        trials, successes = 200, 0
        for index in range(trials):
            result = run_session(protocol, secret, None, *seeds(index)).raise_for_abort()
            self.assertTrue(check_correctness(result, protocol))
            output = result.outputs[1]
            if output is not None:
                self.assertEqual(output, secret.factors)
                successes += 1

        self.assertTrue(within(successes / trials, 0.5, trials), successes)

    def test_sender_view_is_only_a_square(self):
        secret = gen_blum(24, RandomStream(2))
        result = run_session(make_rabin_ot(), secret, None, 3, 4)

        incoming = result.outcome_a.local_view.incoming
        self.assertEqual([label for label, _ in incoming], ["Challenge"])

    def test_square_does_not_depend_on_success(self):
        secret = BlumModulus(3, 7, blum=True)
        units = [x for x in range(1, 21) if math.gcd(x, 21) == 1]

        # 逐一枚举 x 与 A 可能给出的四个根
        exact: dict[bool, Counter] = {True: Counter(), False: Counter()}
        for x in units:
            for root in four_square_roots(x * x % 21, secret):
                exact[root not in (x, 21 - x)][x * x % 21] += 1
        self.assertEqual(exact[True], exact[False])
        self.assertEqual(compare_distributions(exact[True], exact[False]), 1.0)

        protocol = make_rabin_ot()
        sampled: dict[bool, Counter] = {True: Counter(), False: Counter()}
        for x in units:
            for index in range(50):
                result = run_session(protocol, secret, x, *seeds(1000 * x + index)).raise_for_abort()
                record = next(r for r in result.transcript if r.label == "Challenge")
                (square,) = decode_ints(record.message.payload, 1)
                sampled[result.outputs[1] is not None][square] += 1

        self.assertEqual(set(sampled[True]) | set(sampled[False]), {1, 4, 16})
        self.assertGreater(compare_distributions(sampled[True], sampled[False]), 0.01)


class TestGraphOt(unittest.TestCase):
    def setUp(self):
        self.secret = OtSecretIsomorphism.generate(6, RandomStream(5))
        self.protocol = make_graph_ot()

    def test_isomorphism_is_transferred_about_half_the_time(self):
        trials, successes = 100, 0
        for index in range(trials):
            result = run_session(self.protocol, self.secret, None, *seeds(index)).raise_for_abort()
            self.assertTrue(check_correctness(result, self.protocol))
            if result.outputs[1] is not None:
                self.assertEqual(result.outputs[1], self.secret.pi)
                successes += 1

        self.assertTrue(within(successes / trials, 0.5, trials), successes)

    def test_recover_secret_in_both_directions(self):
        sigma = Permutation((1, 2, 0, 3, 4, 5))
        h = apply_perm(self.secret.g1, sigma)
        phi = compose(self.secret.pi, invert(sigma))

        self.assertEqual(apply_perm(h, phi), self.secret.g2)
        self.assertEqual(recover_secret(0, 1, sigma, phi), self.secret.pi)
        self.assertIsNone(recover_secret(1, 1, sigma, phi))

        # 从 G2 出发时得到的是 π 的逆
        back = invert(self.secret.pi)
        self.assertEqual(recover_secret(1, 0, Permutation.identity(6), back), self.secret.pi)

    def test_bad_isomorphism_is_rejected(self):
        result = run_session(graph_ot_bad_isomorphism(self.protocol), self.secret, None, 1, 2)

        self.assertEqual(result.abort.kind, "verification")
        self.assertEqual((result.abort.party, result.abort.step), ("B", "Verification"))

    def test_secret_must_be_an_isomorphism(self):
        with self.assertRaises(ParameterError):
            OtSecretIsomorphism(self.secret.g1, self.secret.g2, Permutation.identity(6))


class TestDlpOt(unittest.TestCase):
    def setUp(self):
        rng = RandomStream(7)
        self.secrets = TwoSecrets(BitString.random(16, rng), BitString.random(16, rng))
        self.protocol = make_dlp_1of2_ot(16)

    def test_receiver_gets_exactly_the_chosen_string(self):
        for choice in (0, 1):
            for index in range(10):
                result = run_session(self.protocol, self.secrets, choice, *seeds(index)).raise_for_abort()
                self.assertEqual(result.outputs, (None, self.secrets.pick(choice)))
                self.assertTrue(check_correctness(result, self.protocol))

    def test_betas_multiply_to_public_constant(self):
        params = public_dlp_params(self.protocol.params["field_bits"])

        for choice in (0, 1):
            result = run_session(self.protocol, self.secrets, choice, 1, 2)
            beta0, beta1 = decode_ints(result.transcript.records[0].message.payload, 2)
            self.assertEqual(beta0 * beta1 % params.p, params.c)

    def test_structure_cheat_is_caught_by_sender(self):
        result = run_session(dlp_structure_cheat(self.protocol), self.secrets, 0, 1, 2)

        self.assertEqual(result.abort.kind, "verification")
        self.assertEqual((result.abort.party, result.abort.step), ("A", "Challenge"))

    def test_mask_width_must_fit_field(self):
        with self.assertRaises(ParameterError):
            make_dlp_1of2_ot(16, field_bits=16)
        with self.assertRaises(ParameterError):
            TwoSecrets(BitString.zeros(4), BitString.zeros(5))


class TestSecretSale(unittest.TestCase):
    def setUp(self):
        self.solutions = gen_sale_instances(3, 7, 4, RandomStream(8))
        self.protocol = make_secret_sale(3)

    def test_instances_share_shape(self):
        shapes = {(len(s.graph.edges), s.graph.degree_sequence()) for s in self.solutions}

        self.assertEqual(len(shapes), 1)

    def test_receiver_gets_a_cycle_in_the_chosen_graph(self):
        for choice in range(3):
            result = run_session(self.protocol, self.solutions, choice, *seeds(choice)).raise_for_abort()
            index, witness = result.outputs[1]
            self.assertEqual(index, choice)
            self.assertTrue(validate_cycle(self.solutions[choice].graph, witness))
            self.assertTrue(check_correctness(result, self.protocol))

    def test_invalid_solution_is_rejected(self):
        result = run_session(sale_invalid_solution(self.protocol), self.solutions, 0, 1, 2)

        self.assertEqual(result.abort.kind, "verification")
        self.assertEqual(result.abort.party, "B")

    def test_pull_back_inverts_relabeling(self):
        sigma = Permutation((2, 0, 1))
        self.assertEqual(pull_back((0, 1, 2), sigma), (0, 1, 2))

    def test_parameters(self):
        self.assertEqual(make_secret_sale(2).name, "graph-1of2-ot")
        with self.assertRaises(ParameterError):
            make_secret_sale(1)
        with self.assertRaises(ParameterError):
            run_session(self.protocol, self.solutions, 5, 1, 2)


class TestComposedOt(unittest.TestCase):
    def test_delivery_rate_is_about_a_quarter(self):
        secret = OtSecretIsomorphism.generate(6, RandomStream(9))
        protocol = make_ot_from_two_1of2(6)
        trials, successes = 80, 0
        for index in range(trials):
            result = run_session(protocol, None, secret, *seeds(index)).raise_for_abort()
            self.assertTrue(check_correctness(result, protocol))
            if result.outputs[1] is not None:
                self.assertEqual(apply_perm(secret.g1, result.outputs[1]), secret.g2)
                successes += 1

        self.assertTrue(within(successes / trials, 0.25, trials), successes)


if __name__ == "__main__":
    unittest.main(verbosity=2)
