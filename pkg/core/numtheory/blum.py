"""合数模 N = p·q 与二次剩余问题。"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..common.exceptions import ParameterError
from ..common.log import logger
from ..common.rng import RandomStream
from .arith import Residue, as_int, crt_pair, legendre, sqrt_mod_prime
from .errors import NotCoprimeError, NotResidueError, TrivialRootsError
from .primes import is_probable_prime, random_prime

MIN_MODULUS_BITS = 6


# region 模数
@dataclass(frozen=True, slots=True)
class BlumModulus:
    """两个不同奇素数之积；blum=True 时要求 p ≡ q ≡ 3 (mod 4)。"""

    p: int
    q: int
    blum: bool = False

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise ParameterError("p 与 q 必须不同")
        for prime in (self.p, self.q):
            if prime % 2 == 0 or not is_probable_prime(prime):
                raise ParameterError(f"{prime} 不是奇素数")
            if self.blum and prime % 4 != 3:
                raise ParameterError(f"{prime} ≢ 3 (mod 4)，不能作为 Blum 因子")

    @property
    def modulus(self) -> int:
        return self.p * self.q

    @property
    def factors(self) -> tuple[int, int]:
        return (min(self.p, self.q), max(self.p, self.q))

    def is_blum_form(self) -> bool:
        return self.p % 4 == 3 and self.q % 4 == 3


def gen_modulus(
    bit_length: int, rng: RandomStream, *, blum: bool = False
) -> BlumModulus:
    if bit_length < MIN_MODULUS_BITS:
        raise ParameterError(f"模数位数至少 {MIN_MODULUS_BITS}: {bit_length}")
    p_bits = bit_length - bit_length // 2
    q_bits = bit_length // 2
    p = random_prime(p_bits, rng, blum=blum)
    while True:
        q = random_prime(q_bits, rng, blum=blum)
        if q != p:
            break
    logger.debug("🎲 生成模数: %d 位, blum=%s", (p * q).bit_length(), blum)
    return BlumModulus(p, q, blum=blum)


def gen_blum(bit_length: int, rng: RandomStream) -> BlumModulus:
    return gen_modulus(bit_length, rng, blum=True)


# endregion


# region 二次剩余
def _require_coprime(y: int, n: int) -> None:
    if math.gcd(y, n) != 1:
        raise NotCoprimeError(f"{y} 与模数 {n} 不互素")


def is_qr(y: int | Residue, m: BlumModulus) -> bool:
    value = as_int(y) % m.modulus
    _require_coprime(value, m.modulus)
    return legendre(value, m.p) == 1 and legendre(value, m.q) == 1


def four_square_roots(y: int | Residue, m: BlumModulus) -> frozenset[int]:
    n = m.modulus
    value = as_int(y) % n
    if not is_qr(value, m):
        raise NotResidueError(f"{value} 不是模 {n} 的二次剩余")
    r_p = sqrt_mod_prime(value, m.p)
    r_q = sqrt_mod_prime(value, m.q)
    return frozenset(
        crt_pair(sp, m.p, sq, m.q) % n
        for sp in (r_p, m.p - r_p)
        for sq in (r_q, m.q - r_q)
    )


def factor_from_roots(x: int | Residue, y: int | Residue, n: int) -> tuple[int, int]:
    """由 x² ≡ y² 且 x ≢ ±y 的两个平方根得到 n 的分解。"""
    xv, yv = as_int(x) % n, as_int(y) % n
    if xv * xv % n != yv * yv % n:
        raise ParameterError(f"{xv} 与 {yv} 的平方模 {n} 不相等")
    if xv == yv or (xv + yv) % n == 0:
        raise TrivialRootsError(f"{xv} ≡ ±{yv} (mod {n})，无法得到因子")
    d = math.gcd(xv + yv, n)
    return d, n // d


def sample_nonresidue_jacobi1(m: BlumModulus, rng: RandomStream) -> int:
    """Jacobi 符号为 1 的二次非剩余（两个 Legendre 符号都是 −1）。"""
    n = m.modulus
    while True:
        y = rng.randrange(2, n)
        if math.gcd(y, n) != 1:
            continue
        if legendre(y, m.p) == -1 and legendre(y, m.q) == -1:
            return y


def sample_unit(n: int, rng: RandomStream) -> int:
    """Z_n* 中的随机元素。"""
    while True:
        x = rng.randrange(1, n)
        if math.gcd(x, n) == 1:
            return x


# endregion

__all__ = [
    "MIN_MODULUS_BITS",
    "BlumModulus",
    "factor_from_roots",
    "four_square_roots",
    "gen_blum",
    "gen_modulus",
    "is_qr",
    "sample_nonresidue_jacobi1",
    "sample_unit",
]
