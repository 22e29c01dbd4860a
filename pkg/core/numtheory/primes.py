"""素性检测与随机素数。

流程：
1. 小素数试除；
2. n < 341550071728321 时使用确定性见证 {2, 3, 5, 7, 11, 13, 17}；
3. 否则从注入的随机流抽取 rounds 个 Miller–Rabin 见证（未注入时由 n 派生）。
"""

from __future__ import annotations

from ..common.exceptions import ParameterError
from ..common.rng import RandomStream, derive_seed

MILLER_RABIN_ROUNDS = 40
DETERMINISTIC_BOUND = 341_550_071_728_321
_DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17)
_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)  # fmt: skip
# 该位数以下直接在区间内枚举，保证极小参数也能取到素数
SMALL_PRIME_BITS = 8


def _is_composite_witness(a: int, d: int, s: int, n: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(
    n: int, rng: RandomStream | None = None, rounds: int = MILLER_RABIN_ROUNDS
) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if n < DETERMINISTIC_BOUND:
        witnesses = _DETERMINISTIC_WITNESSES
    else:
        stream = rng or RandomStream(derive_seed(n, "miller-rabin"))
        witnesses = tuple(stream.randrange(2, n - 1) for _ in range(rounds))
    return not any(_is_composite_witness(a, d, s, n) for a in witnesses)


def random_prime(bits: int, rng: RandomStream, *, blum: bool = False) -> int:
    """随机素数；blum=True 时保证 ≡ 3 (mod 4)。

    bits < SMALL_PRIME_BITS 时在 [3, 2^bits) 内均匀抽取，
    否则固定最高位为 1，得到恰好 bits 位的素数。
    """
    if bits < 2:
        raise ParameterError(f"素数位数过小: {bits}")
    if bits < SMALL_PRIME_BITS:
        pool = [
            c
            for c in range(3, 1 << bits)
            if is_probable_prime(c) and (not blum or c % 4 == 3)
        ]
        return rng.choice(pool)

    low_mask = 3 if blum else 1
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | low_mask
        if is_probable_prime(candidate, rng):
            return candidate


__all__ = [
    "DETERMINISTIC_BOUND",
    "MILLER_RABIN_ROUNDS",
    "is_probable_prime",
    "random_prime",
]
