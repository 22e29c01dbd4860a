"""基于二次剩余的身份证明（m 轮）。

流程：
1. 可信参数生成产生 N 后丢弃 p, q；A 取秘密 s，公开 v ≡ s²；
2. 每轮 A 取 x ∈ Z_N*，承诺 a ≡ x²；
3. B 发送挑战比特 r_B；
4. A 应答 y ≡ x·s^{r_B}；B 检查 y ≠ 0 且 y² ≡ a·v^{r_B}。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..common.codec import PayloadReader, decode_ints, encode_int, encode_ints, encode_u8
from ..common.exceptions import ParameterError
from ..common.log import logger
from ..common.rng import RandomStream
from ..numtheory import gen_blum, mod_inverse, sample_unit
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags
from .rounds import (
    DEFAULT_ROUNDS,
    STEP_SETUP,
    ZkVerdict,
    check_rounds,
    prove_rounds,
    verify_rounds,
)


# region 身份
@dataclass(frozen=True, slots=True)
class QrpIdentity:
    n: int
    s: int
    v: int

    def __post_init__(self) -> None:
        if not 0 < self.s < self.n or math.gcd(self.s, self.n) != 1:
            raise ParameterError("秘密 s 必须属于 Z_N*")
        if self.s * self.s % self.n != self.v:
            raise ParameterError("公开值 v 必须满足 v ≡ s² (mod N)")

    @classmethod
    def from_secret(cls, n: int, s: int) -> QrpIdentity:
        return cls(n, s, s * s % n)


def gen_qrp_identity(bits: int, rng: RandomStream) -> QrpIdentity:
    """可信参数生成：产生 N 后只保留 N，p、q 随即丢弃。"""
    n = gen_blum(bits, rng).modulus
    identity = QrpIdentity.from_secret(n, sample_unit(n, rng))
    logger.debug("🎲 QRP 身份: N=%d 位", n.bit_length())
    return identity


def qrp_response(x: int, s: int, challenge: int, n: int) -> int:
    return x * pow(s, challenge, n) % n


def qrp_round_ok(a: int, challenge: int, y: int, v: int, n: int) -> bool:
    return y % n != 0 and y * y % n == a * pow(v, challenge, n) % n


def extract_secret(y0: int, y1: int, n: int) -> int:
    """同一承诺下两个挑战的应答给出 v 的平方根 y1·y0⁻¹。"""
    return y1 * mod_inverse(y0, n) % n


# endregion


# region 轮次实现
class QrpRoundProver:
    def __init__(self, identity: QrpIdentity):
        self.identity = identity
        self._x: int | None = None

    def commit(self, rng: RandomStream) -> bytes:
        self._x = sample_unit(self.identity.n, rng)
        return encode_int(self._x * self._x % self.identity.n)

    def respond(self, challenge: int) -> bytes:
        assert self._x is not None
        return encode_int(qrp_response(self._x, self.identity.s, challenge, self.identity.n))


class QrpCheatingProver:
    """不知道 s：猜测挑战 ĝ，预先承诺 a ≡ y²·v^{−ĝ}；猜错时发回随机值。"""

    def __init__(self, n: int, v: int):
        self.n = n
        self.v = v
        self._guess = 0
        self._y = 0
        self._rng: RandomStream | None = None

    def commit(self, rng: RandomStream) -> bytes:
        self._rng = rng
        self._guess = rng.bit()
        self._y = sample_unit(self.n, rng)
        a = self._y * self._y * pow(mod_inverse(self.v, self.n), self._guess, self.n) % self.n
        return encode_int(a)

    def respond(self, challenge: int) -> bytes:
        if challenge == self._guess:
            return encode_int(self._y)
        assert self._rng is not None
        return encode_int(sample_unit(self.n, self._rng))


class QrpRoundVerifier:
    def __init__(self, n: int, v: int):
        self.n = n
        self.v = v

    def check(self, commitment: bytes, challenge: int, response: bytes) -> bool:
        (a,) = decode_ints(commitment, 1)
        (y,) = decode_ints(response, 1)
        return qrp_round_ok(a, challenge, y, self.v, self.n)


# endregion


# region 协议方
def _read_setup(ctx: PartyContext, payload: bytes, m: int) -> tuple[int, int]:
    reader = PayloadReader(payload)
    n, v = reader.read_ints(2)
    rounds = reader.read_u8()
    reader.finish()
    if rounds != m:
        ctx.fail(STEP_SETUP, f"轮数不一致: 约定 {m}, 收到 {rounds}")
    if n < 15 or math.gcd(v, n) != 1:
        ctx.fail(STEP_SETUP, "公开实例非法")
    return n, v


def _party_a(m: int, cheating: bool):
    def party(ctx: PartyContext) -> PartyScript:
        identity: QrpIdentity = ctx.input
        yield ctx.send(STEP_SETUP, tags.ZK_SETUP, encode_ints(identity.n, identity.v) + encode_u8(m))
        prover = (
            QrpCheatingProver(identity.n, identity.v) if cheating else QrpRoundProver(identity)
        )
        return (yield from prove_rounds(ctx, prover, m))

    return party


def _party_b(m: int):
    def party(ctx: PartyContext) -> PartyScript:
        message = yield ctx.recv(STEP_SETUP, tags.ZK_SETUP)
        n, v = _read_setup(ctx, message.payload, m)
        return (yield from verify_rounds(ctx, QrpRoundVerifier(n, v), m))

    return party


# endregion


def honest_expected(m: int):
    def expected(view_a: LocalView, view_b: LocalView) -> tuple[ZkVerdict, ZkVerdict]:
        verdict = ZkVerdict.from_results((True,) * m)
        return verdict, verdict

    return expected


def make_qrp_zkp(m: int = DEFAULT_ROUNDS, *, cheating: bool = False) -> ProtocolDefinition:
    """input_a 为 QrpIdentity（作弊证明方只使用其中的 N, v）；input_b 为 None。"""
    check_rounds(m)
    return ProtocolDefinition(
        name="zkp-qrp-cheat" if cheating else "zkp-qrp",
        family=tags.FAMILY,
        description=(
            "不知道 s 的证明方猜测挑战" if cheating else "二次剩余身份证明：证明知道 v 的平方根"
        ),
        party_a=_party_a(m, cheating),
        party_b=_party_b(m),
        tags=tags.describe(
            tags.ZK_SETUP, tags.ZK_COMMITMENT, tags.ZK_CHALLENGE, tags.ZK_RESPONSE, tags.ZK_VERDICT
        ),
        output_domains=("裁决（接受/拒绝, 失败轮号）", "裁决（接受/拒绝, 失败轮号）"),
        expected=None if cheating else honest_expected(m),
        params={"m": m},
    )


__all__ = [
    "QrpCheatingProver",
    "QrpIdentity",
    "QrpRoundProver",
    "QrpRoundVerifier",
    "extract_secret",
    "gen_qrp_identity",
    "honest_expected",
    "make_qrp_zkp",
    "qrp_response",
    "qrp_round_ok",
]
