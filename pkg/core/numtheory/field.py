"""素数域 Z_p 与生成元。

流程：
1. gen_field 选取安全素数 p = 2q' + 1，p−1 的分解已知；
2. 随机抽取 g，直到生成元证书 g^((p−1)/r) ≢ 1 对所有素因子 r 成立；
3. public_dlp_params 由固定公开标签确定性地生成 (p, g, c)，供所有 DLP 不经意传输共用。
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

import sympy

from ..common.exceptions import ParameterError
from ..common.log import logger
from ..common.rng import RandomStream, derive_seed
from .primes import SMALL_PRIME_BITS, is_probable_prime

MIN_FIELD_BITS = 4
PUBLIC_PARAMS_LABEL = "twoparty/dlp-ot/public-params"


# region 生成元
def group_order_factors(p: int) -> tuple[int, ...]:
    """p−1 的不同素因子；安全素数走快速路径，否则交给 sympy 分解。"""
    half = (p - 1) // 2
    if half > 2 and is_probable_prime(half):
        return (2, half)
    return tuple(sympy.primefactors(p - 1))


def is_generator(g: int, p: int) -> bool:
    if p < 3 or not is_probable_prime(p):
        raise ParameterError(f"{p} 不是奇素数")
    if not 2 <= g <= p - 1:
        return False
    return all(pow(g, (p - 1) // r, p) != 1 for r in group_order_factors(p))


@dataclass(frozen=True, slots=True)
class FieldContext:
    p: int
    g: int

    def __post_init__(self) -> None:
        if not is_generator(self.g, self.p):
            raise ParameterError(f"{self.g} 不是 Z_{self.p}* 的生成元")

    @property
    def order(self) -> int:
        return self.p - 1

    def exp(self, x: int) -> int:
        return pow(self.g, x, self.p)


# endregion


# region 参数生成
def _random_safe_prime(bits: int, rng: RandomStream) -> int:
    if bits < SMALL_PRIME_BITS:
        pool = [
            c
            for c in range(5, 1 << bits)
            if is_probable_prime(c) and is_probable_prime((c - 1) // 2)
        ]
        return rng.choice(pool)
    while True:
        half = rng.getrandbits(bits - 1) | (1 << (bits - 2)) | 1
        if is_probable_prime(half, rng) and is_probable_prime(2 * half + 1, rng):
            return 2 * half + 1


def gen_field(bit_length: int, rng: RandomStream) -> FieldContext:
    if bit_length < MIN_FIELD_BITS:
        raise ParameterError(f"域位数至少 {MIN_FIELD_BITS}: {bit_length}")
    p = _random_safe_prime(bit_length, rng)
    while True:
        g = rng.randrange(2, p)
        if is_generator(g, p):
            break
    logger.debug("🎲 生成素数域: p=%d 位, g=%d", p.bit_length(), g)
    return FieldContext(p, g)


def hash_to_group(label: str | bytes, field: FieldContext) -> int:
    """公开标签散列到 Z_p* \\ {1}，没有人知道其离散对数的来历。"""
    raw = label.encode("utf-8") if isinstance(label, str) else bytes(label)
    counter = 0
    while True:
        digest = hashlib.sha256(raw + counter.to_bytes(4, "big")).digest()
        value = int.from_bytes(digest, "big") % field.p
        if value >= 2:
            return value
        counter += 1


@dataclass(frozen=True, slots=True)
class DlpPublicParams:
    field: FieldContext
    c: int

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def g(self) -> int:
        return self.field.g


@lru_cache(maxsize=32)
def public_dlp_params(bits: int) -> DlpPublicParams:
    rng = RandomStream(derive_seed(bits, PUBLIC_PARAMS_LABEL))
    field = gen_field(bits, rng)
    c = hash_to_group(f"{PUBLIC_PARAMS_LABEL}/c/{field.p}", field)
    logger.debug("🎲 公共 DLP 参数: p=%d, g=%d, c=%d", field.p, field.g, c)
    return DlpPublicParams(field, c)


# endregion

__all__ = [
    "MIN_FIELD_BITS",
    "DlpPublicParams",
    "FieldContext",
    "gen_field",
    "group_order_factors",
    "hash_to_group",
    "is_generator",
    "public_dlp_params",
]
