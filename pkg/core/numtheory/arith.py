"""模运算基础。

Residue 是带模数的剩余类值；其余函数直接接受 int，
便于协议代码在负载解码后直接使用。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..common.exceptions import ParameterError
from .errors import NotResidueError


# region 剩余类
@dataclass(frozen=True, slots=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ParameterError(f"模数必须 ≥ 2: {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ParameterError(
                f"剩余值 {self.value} 不在 [0, {self.modulus - 1}] 内"
            )

    @classmethod
    def of(cls, value: int, modulus: int) -> Residue:
        if modulus < 2:
            raise ParameterError(f"模数必须 ≥ 2: {modulus}")
        return cls(value % modulus, modulus)

    def __int__(self) -> int:
        return self.value


def as_int(value: int | Residue) -> int:
    return value.value if isinstance(value, Residue) else int(value)


def mod_pow(base: Residue, exp: int) -> Residue:
    if exp < 0:
        raise ParameterError(f"指数必须非负: {exp}")
    return Residue(pow(base.value, exp, base.modulus), base.modulus)


def mod_inverse(a: int, m: int) -> int:
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise ParameterError(f"{a} 在模 {m} 下不可逆") from exc


# endregion


# region 符号
def jacobi(a: int, n: int) -> int:
    """二进制互反律计算 Jacobi 符号，不分解 n。"""
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"Jacobi 符号要求奇数 n ≥ 3: {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    if p < 3 or p % 2 == 0:
        raise ParameterError(f"Legendre 符号要求奇素数: {p}")
    ls = pow(a % p, (p - 1) // 2, p)
    if ls == p - 1:
        return -1
    return ls


# endregion


# region 平方根与中国剩余定理
def sqrt_mod_prime(a: int, p: int) -> int:
    """模素数平方根：p ≡ 3 (mod 4) 用 (p+1)/4 次幂，否则 Tonelli–Shanks。"""
    a %= p
    if a == 0 or p == 2:
        return a
    if legendre(a, p) != 1:
        raise NotResidueError(f"{a} 不是模 {p} 的二次剩余")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)

    # p - 1 = q · 2^s
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def crt_pair(r_p: int, p: int, r_q: int, q: int) -> int:
    if math.gcd(p, q) != 1:
        raise ParameterError(f"模数不互素: {p}, {q}")
    h = (r_q - r_p) * mod_inverse(p, q) % q
    return r_p + p * h


# endregion

__all__ = [
    "Residue",
    "as_int",
    "crt_pair",
    "jacobi",
    "legendre",
    "mod_inverse",
    "mod_pow",
    "sqrt_mod_prime",
]
