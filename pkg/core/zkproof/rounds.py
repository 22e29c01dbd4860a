"""挑战-应答式证明的通用轮次接口。

每轮四步：Commitment（证明方）→ Challenge（验证方随机比特）
→ Response（证明方）→ Verification（验证方本地检查）。
m 轮严格顺序执行；验证方跑完全部轮次后发送裁决。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from ..common.bits import BitString
from ..common.codec import PayloadReader, encode_u8
from ..common.exceptions import ParameterError, PayloadError
from ..common.rng import RandomStream
from ..session.party import PartyContext, PartyScript
from . import tags

MAX_ROUNDS = 255
DEFAULT_ROUNDS = 20
NO_FAILURE = 0xFF
STEP_SETUP = "Set-up"
STEP_COMMITMENT = "Commitment"
STEP_CHALLENGE = "Challenge"
STEP_RESPONSE = "Response"
STEP_VERDICT = "Verification"


# region 裁决
@dataclass(frozen=True, slots=True)
class ZkVerdict:
    accepted: bool
    rounds: int
    failure_round: int | None
    round_results: tuple[bool, ...] = ()

    @classmethod
    def from_results(cls, results: tuple[bool, ...]) -> ZkVerdict:
        failure = next((t for t, ok in enumerate(results) if not ok), None)
        return cls(failure is None, len(results), failure, results)

    def encode(self) -> bytes:
        bitmap = BitString(
            sum(1 << (self.rounds - 1 - t) for t, ok in enumerate(self.round_results) if ok),
            self.rounds,
        )
        failure = NO_FAILURE if self.failure_round is None else self.failure_round
        return encode_u8(int(self.accepted)) + encode_u8(failure) + bitmap.encode()

    @classmethod
    def decode(cls, payload: bytes) -> ZkVerdict:
        reader = PayloadReader(payload)
        accepted = reader.read_u8()
        failure = reader.read_u8()
        bitmap = BitString.read(reader)
        reader.finish()
        verdict = cls.from_results(tuple(bool(bitmap.bit(t)) for t in range(len(bitmap))))
        if verdict.encode() != bytes(payload):
            raise PayloadError(f"裁决字段不一致: accepted={accepted}, failure={failure}")
        return verdict


def check_rounds(m: int) -> None:
    if not 1 <= m <= MAX_ROUNDS:
        raise ParameterError(f"轮数必须在 [1, {MAX_ROUNDS}]: {m}")


# endregion


# region 轮次接口
class RoundProver(Protocol):
    def commit(self, rng: RandomStream) -> bytes: ...

    def respond(self, challenge: int) -> bytes: ...


class RoundVerifier(Protocol):
    def check(self, commitment: bytes, challenge: int, response: bytes) -> bool: ...


def _read_round(ctx: PartyContext, label: str, payload: bytes, expected: int) -> PayloadReader:
    reader = PayloadReader(payload)
    if reader.read_u8() != expected:
        ctx.fail(label, f"轮号与第 {expected} 轮不符")
    return reader


def prove_rounds(ctx: PartyContext, prover: RoundProver, m: int) -> PartyScript:
    for t in range(m):
        commitment = prover.commit(ctx.rng)
        yield ctx.send(f"{STEP_COMMITMENT}[{t}]", tags.ZK_COMMITMENT, encode_u8(t) + commitment)

        label = f"{STEP_CHALLENGE}[{t}]"
        message = yield ctx.recv(label, tags.ZK_CHALLENGE)
        reader = _read_round(ctx, label, message.payload, t)
        challenge = reader.read_u8()
        reader.finish()
        if challenge not in (0, 1):
            ctx.fail(label, f"挑战必须是单个比特: {challenge}")
        yield ctx.send(f"{STEP_RESPONSE}[{t}]", tags.ZK_RESPONSE, encode_u8(t) + prover.respond(challenge))

    message = yield ctx.recv(STEP_VERDICT, tags.ZK_VERDICT)
    return ZkVerdict.decode(message.payload)


def verify_rounds(ctx: PartyContext, verifier: RoundVerifier, m: int) -> PartyScript:
    results = []
    for t in range(m):
        label = f"{STEP_COMMITMENT}[{t}]"
        message = yield ctx.recv(label, tags.ZK_COMMITMENT)
        commitment = _read_round(ctx, label, message.payload, t).read_bytes(len(message.payload) - 1)

        challenge = ctx.rng.bit()
        ctx.remember(f"challenge[{t}]", challenge)
        yield ctx.send(f"{STEP_CHALLENGE}[{t}]", tags.ZK_CHALLENGE, encode_u8(t) + encode_u8(challenge))

        label = f"{STEP_RESPONSE}[{t}]"
        message = yield ctx.recv(label, tags.ZK_RESPONSE)
        response = _read_round(ctx, label, message.payload, t).read_bytes(len(message.payload) - 1)
        results.append(verifier.check(commitment, challenge, response))

    verdict = ZkVerdict.from_results(tuple(results))
    yield ctx.send(STEP_VERDICT, tags.ZK_VERDICT, verdict.encode())
    return verdict


# endregion

__all__ = [
    "DEFAULT_ROUNDS",
    "MAX_ROUNDS",
    "RoundProver",
    "RoundVerifier",
    "ZkVerdict",
    "check_rounds",
    "prove_rounds",
    "verify_rounds",
]
