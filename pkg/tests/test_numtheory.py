# ruff: noqa: E402
"""Tests for modular arithmetic, Blum moduli and prime fields, checked against sympy.

Run from the repository root:
    python tests/test_numtheory.py -v
"""

from __future__ import annotations

import math
import sys
import unittest
from pathlib import Path

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.common import ParameterError, RandomStream
from core.numtheory import (
    BlumModulus,
    NotCoprimeError,
    NotResidueError,
    Residue,
    TrivialRootsError,
    crt_pair,
    factor_from_roots,
    four_square_roots,
    gen_blum,
    gen_field,
    hash_to_group,
    is_generator,
    is_probable_prime,
    is_qr,
    jacobi,
    legendre,
    mod_inverse,
    mod_pow,
    public_dlp_params,
    random_prime,
    sample_nonresidue_jacobi1,
    sample_unit,
    sqrt_mod_prime,
)

SMALL_BLUM = {21: (3, 7), 33: (3, 11), 77: (7, 11)}


def units(n: int) -> list[int]:
    return [y for y in range(1, n) if math.gcd(y, n) == 1]


class TestSymbols(unittest.TestCase):
    def test_jacobi_matches_sympy(self):
        for n in range(3, 200, 2):
            for a in range(-5, 2 * n):
                self.assertEqual(jacobi(a, n), sympy.jacobi_symbol(a, n), (a, n))

    def test_legendre_matches_sympy(self):
        for p in (3, 5, 7, 11, 13, 17, 101):
            for a in range(p):
                self.assertEqual(legendre(a, p), sympy.legendre_symbol(a, p))

    def test_jacobi_rejects_even_modulus(self):
        with self.assertRaises(ParameterError):
            jacobi(3, 10)


class TestRoots(unittest.TestCase):
    def test_sqrt_mod_prime_covers_both_branches(self):
        # 17 ≡ 1 (mod 4) 走 Tonelli–Shanks，23 ≡ 3 (mod 4) 走快速幂
        for p in (17, 23, 41, 10007):
            for a in range(1, min(p, 400)):
                if legendre(a, p) == 1:
                    r = sqrt_mod_prime(a, p)
                    self.assertEqual(r * r % p, a)

    def test_sqrt_of_nonresidue_raises(self):
        with self.assertRaises(NotResidueError):
            sqrt_mod_prime(5, 7)

    def test_crt_pair(self):
        self.assertEqual(crt_pair(2, 3, 3, 7), 17)
        with self.assertRaises(ParameterError):
            crt_pair(1, 6, 1, 9)

    def test_four_square_roots_match_sympy(self):
        for n, (p, q) in SMALL_BLUM.items():
            modulus = BlumModulus(p, q, blum=True)
            for y in units(n):
                if not is_qr(y, modulus):
                    continue
                roots = four_square_roots(y, modulus)
                self.assertEqual(len(roots), 4)
                self.assertEqual(roots, frozenset(sympy.sqrt_mod(y, n, all_roots=True)))

    def test_square_roots_of_four_mod_21(self):
        self.assertEqual(four_square_roots(4, BlumModulus(3, 7, blum=True)), {2, 5, 16, 19})

    def test_factor_from_roots(self):
        self.assertEqual(set(factor_from_roots(2, 5, 21)), {3, 7})
        with self.assertRaises(TrivialRootsError):
            factor_from_roots(2, 19, 21)
        with self.assertRaises(ParameterError):
            factor_from_roots(2, 4, 21)


class TestQuadraticResidues(unittest.TestCase):
    def test_is_qr_matches_sympy(self):
        for n, (p, q) in SMALL_BLUM.items():
            modulus = BlumModulus(p, q, blum=True)
            for y in units(n):
                expected = sympy.is_quad_residue(y, p) and sympy.is_quad_residue(y, q)
                self.assertEqual(is_qr(y, modulus), expected, (y, n))

    def test_is_qr_requires_unit(self):
        with self.assertRaises(NotCoprimeError):
            is_qr(7, BlumModulus(3, 7, blum=True))

    def test_nonresidue_has_jacobi_one(self):
        rng = RandomStream(11)
        modulus = gen_blum(24, rng)
        for _ in range(20):
            y = sample_nonresidue_jacobi1(modulus, rng)
            self.assertEqual(jacobi(y, modulus.modulus), 1)
            self.assertFalse(is_qr(y, modulus))

    def test_sample_unit(self):
        rng = RandomStream(5)
        for _ in range(50):
            self.assertEqual(math.gcd(sample_unit(77, rng), 77), 1)


class TestModuli(unittest.TestCase):
    def test_gen_blum_is_deterministic_and_well_formed(self):
        a = gen_blum(32, RandomStream(1))
        b = gen_blum(32, RandomStream(1))

        self.assertEqual(a, b)
        self.assertTrue(a.is_blum_form())
        self.assertIn(a.modulus.bit_length(), (31, 32))
        self.assertTrue(sympy.isprime(a.p) and sympy.isprime(a.q))

    def test_blum_modulus_validation(self):
        with self.assertRaises(ParameterError):
            BlumModulus(7, 7)
        with self.assertRaises(ParameterError):
            BlumModulus(5, 7, blum=True)
        with self.assertRaises(ParameterError):
            BlumModulus(9, 7)

    def test_small_modulus_is_rejected(self):
        with self.assertRaises(ParameterError):
            gen_blum(4, RandomStream(0))


class TestPrimes(unittest.TestCase):
    def test_matches_sympy_on_small_range(self):
        for n in range(0, 3000):
            self.assertEqual(is_probable_prime(n), sympy.isprime(n), n)

    def test_carmichael_and_large_values(self):
        for carmichael in (561, 1105, 1729, 41041, 825265):
            self.assertFalse(is_probable_prime(carmichael))
        self.assertTrue(is_probable_prime(2**61 - 1))
        self.assertTrue(is_probable_prime(2**127 - 1))
        self.assertFalse(is_probable_prime((2**61 - 1) * (2**31 - 1)))

    def test_random_prime_bit_length(self):
        rng = RandomStream(9)
        for bits in (4, 12, 40):
            p = random_prime(bits, rng, blum=True)
            self.assertTrue(sympy.isprime(p))
            self.assertEqual(p % 4, 3)
            if bits >= 8:
                self.assertEqual(p.bit_length(), bits)


class TestFields(unittest.TestCase):
    def test_is_generator_matches_sympy(self):
        for p in (7, 23, 47, 59):
            for g in range(2, p):
                self.assertEqual(is_generator(g, p), sympy.is_primitive_root(g, p), (g, p))

    def test_known_generator(self):
        self.assertTrue(is_generator(3, 7))
        self.assertFalse(is_generator(2, 7))
        self.assertEqual(pow(3, 4, 7), 4)

    def test_gen_field_uses_safe_prime(self):
        field = gen_field(20, RandomStream(2))

        self.assertTrue(sympy.isprime(field.p))
        self.assertTrue(sympy.isprime((field.p - 1) // 2))
        self.assertTrue(sympy.is_primitive_root(field.g, field.p))

    def test_public_params_are_fixed(self):
        a = public_dlp_params(24)
        b = public_dlp_params(24)

        self.assertEqual((a.p, a.g, a.c), (b.p, b.g, b.c))
        self.assertTrue(2 <= a.c < a.p)
        self.assertEqual(hash_to_group("label", a.field), hash_to_group("label", a.field))


class TestResidue(unittest.TestCase):
    def test_residue_bounds(self):
        self.assertEqual(Residue.of(-1, 7).value, 6)
        with self.assertRaises(ParameterError):
            Residue(7, 7)
        with self.assertRaises(ParameterError):
            mod_pow(Residue(2, 7), -1)

    def test_mod_inverse(self):
        self.assertEqual(mod_inverse(3, 7), 5)
        with self.assertRaises(ParameterError):
            mod_inverse(3, 21)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=0, max_value=64))
    def test_mod_pow_matches_builtin(self, base, exp):
        n = 1_000_003
        self.assertEqual(mod_pow(Residue.of(base, n), exp).value, pow(base, exp, n))


if __name__ == "__main__":
    unittest.main(verbosity=2)
