"""Rabin 不经意传输。

流程：
1. Set-up：A → B 公开 N = p·q；
2. Challenge：B 取 x ∈ Z_N*，发送 x² mod N；
3. Response：A 用 p, q 求出四个平方根，均匀选一个发回；
4. Verification：B 检查 r² ≡ x²；r ≢ ±x 时 gcd(x + r, N) 给出分解。
A 无法判断传输是否成功。
"""

from __future__ import annotations

import math
from typing import TypeAlias

from ..common.codec import decode_ints, encode_int
from ..numtheory import BlumModulus, factor_from_roots, four_square_roots
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags

OtSecretFactorization: TypeAlias = BlumModulus
RESAMPLE_BUDGET = 64
STEP_SETUP = "Set-up"
STEP_CHALLENGE = "Challenge"
STEP_RESPONSE = "Response"
STEP_VERIFICATION = "Verification"


def rabin_receiver_outcome(x: int, root: int, n: int) -> tuple[int, int] | None:
    """B 的输出：root ≢ ±x 时为 (较小因子, 较大因子)，否则一无所获。"""
    if root % n in (x % n, (-x) % n):
        return None
    p, q = factor_from_roots(x, root, n)
    return (min(p, q), max(p, q))


# region 协议方
def rabin_respond(ctx: PartyContext, secret: OtSecretFactorization) -> PartyScript:
    """Challenge / Response 两步（公开 N 之后）。"""
    n = secret.modulus
    message = yield ctx.recv(STEP_CHALLENGE, tags.RABIN_SQUARE)
    (z,) = decode_ints(message.payload, 1)
    if not 0 < z < n or math.gcd(z, n) != 1:
        ctx.fail(STEP_CHALLENGE, "x² 不在 Z_N* 中")
    try:
        roots = sorted(four_square_roots(z, secret))
    except ValueError:
        ctx.fail(STEP_CHALLENGE, "收到的值不是二次剩余")
    root = roots[ctx.rng.randbelow(len(roots))]
    ctx.remember("root", root)
    yield ctx.send(STEP_RESPONSE, tags.RABIN_ROOT, encode_int(root))
    return None


def read_rabin_modulus(ctx: PartyContext, payload: bytes) -> int:
    (n,) = decode_ints(payload, 1)
    if n < 15 or n % 2 == 0:
        ctx.fail(STEP_SETUP, f"模数 {n} 不是奇合数")
    return n


def rabin_challenge(ctx: PartyContext, n: int, pinned_x: int | None = None) -> PartyScript:
    ctx.remember("n", n)
    if pinned_x is not None:
        x = pinned_x % n
    else:
        for _ in range(RESAMPLE_BUDGET):
            x = ctx.rng.randrange(1, n)
            if math.gcd(x, n) == 1:
                break
        else:
            ctx.fail(STEP_CHALLENGE, "重采样次数耗尽，未取到与 N 互素的 x")
    ctx.remember("x", x)
    yield ctx.send(STEP_CHALLENGE, tags.RABIN_SQUARE, encode_int(x * x % n))

    message = yield ctx.recv(STEP_RESPONSE, tags.RABIN_ROOT)
    (root,) = decode_ints(message.payload, 1)
    if not 0 <= root < n or root * root % n != x * x % n:
        ctx.fail(STEP_VERIFICATION, f"{root} 不是 x² 的平方根")
    ctx.remember("received_root", root)
    return rabin_receiver_outcome(x, root, n)


def rabin_sender(ctx: PartyContext, secret: OtSecretFactorization) -> PartyScript:
    yield ctx.send(STEP_SETUP, tags.RABIN_MODULUS, encode_int(secret.modulus))
    return (yield from rabin_respond(ctx, secret))


def rabin_receiver(ctx: PartyContext, pinned_x: int | None = None) -> PartyScript:
    message = yield ctx.recv(STEP_SETUP, tags.RABIN_MODULUS)
    n = read_rabin_modulus(ctx, message.payload)
    return (yield from rabin_challenge(ctx, n, pinned_x))


def _party_a(ctx: PartyContext) -> PartyScript:
    return (yield from rabin_sender(ctx, ctx.input))


def _party_b(ctx: PartyContext) -> PartyScript:
    return (yield from rabin_receiver(ctx, ctx.input))


# endregion


def _expected(view_a: LocalView, view_b: LocalView) -> tuple[None, tuple[int, int] | None]:
    secret: BlumModulus = view_a.input
    return None, rabin_receiver_outcome(
        view_b.notes["x"], view_a.notes["root"], secret.modulus
    )


def make_rabin_ot() -> ProtocolDefinition:
    """input_a 为 BlumModulus；input_b 为 None，或固定的 x（手工追踪用）。"""
    return ProtocolDefinition(
        name="rabin-ot",
        family=tags.FAMILY,
        description="Rabin 不经意传输：以 1/2 概率传出 N 的分解",
        party_a=_party_a,
        party_b=_party_b,
        tags=tags.describe(tags.RABIN_MODULUS, tags.RABIN_SQUARE, tags.RABIN_ROOT),
        output_domains=("无输出", "N 的分解 (p, q) 或无"),
        expected=_expected,
    )


__all__ = [
    "OtSecretFactorization",
    "make_rabin_ot",
    "rabin_challenge",
    "rabin_receiver",
    "rabin_receiver_outcome",
    "rabin_respond",
    "rabin_sender",
    "read_rabin_modulus",
]
