"""抛硬币：两方在不可信信道上共同产生一个公平比特。

四种实现：
1. QRP：A 给出 z ≡ y²，B 猜 y 的奇偶，A 公开 x, y, p, q；
2. 一般形式：A 承诺 y = g^x，x ∈ {0, …, p−2}，B 猜 x 的奇偶；
3. Rabin OT：B 得到 A 的分解即获胜；
4. 承诺：A 用 QRP 承诺 a，B 给出 b，结果为 a ⊕ b。

CoinResult 可由任何一方从 proof_data 重新计算。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..commitment import QRP, Commitment, Opening, QrpParams, qrp_commit, verify_commitment
from ..commitment import tags as commit_tags
from ..common.codec import decode_ints, encode_ints, encode_u8
from ..common.exceptions import ParameterError
from ..common.log import logger
from ..numtheory import (
    BlumModulus,
    FieldContext,
    gen_blum,
    gen_field,
    is_generator,
    is_probable_prime,
    sample_nonresidue_jacobi1,
    sample_unit,
)
from ..oblivious import rabin_receiver, rabin_receiver_outcome, rabin_sender
from ..oblivious import tags as ot_tags
from ..session.errors import ROLE_A, ROLE_B
from ..session.party import LocalView, PartyContext, PartyScript, ProtocolDefinition
from . import tags

STEP_COMMITMENT = "Commitment"
STEP_BET = "Bet"
STEP_OPENING = "Opening"
STEP_VERIFICATION = "Verification"
STEP_CLAIM = "Claim"
OT_PREFIX = "ot/"
DEFAULT_COIN_BITS = 16
COIN_OUTPUT = "硬币结果（比特, 胜方, 证明数据）"


@dataclass(frozen=True, slots=True)
class CoinResult:
    outcome: int
    winner: str
    proof_data: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class CoinPuzzle:
    """QRP 抛硬币中 A 的秘密；手工追踪时可固定 x。"""

    modulus: BlumModulus
    x: int | None = None


def _bet_winner(bet: int, outcome: int) -> str:
    return ROLE_B if bet == outcome else ROLE_A


def _read_bet(ctx: PartyContext, payload: bytes) -> int:
    if len(payload) != 1 or payload[0] > 1:
        ctx.fail(STEP_BET, "猜测必须是单字节 0 或 1")
    return payload[0]


def _draw_bet(ctx: PartyContext) -> int:
    bet = ctx.input if ctx.input is not None else ctx.rng.bit()
    if bet not in (0, 1):
        raise ParameterError(f"猜测必须是 0 或 1: {bet}")
    ctx.remember("bet", bet)
    return bet


# region QRP
def qrp_coin_puzzle(x: int, n: int) -> tuple[int, int]:
    y = x * x % n
    return y, y * y % n


def qrp_coin_check(n: int, z: int, x: int, y: int, p: int, q: int) -> str | None:
    """返回未通过的检查名；全部通过时为 None。"""
    if p * q != n or p == q or not (is_probable_prime(p) and is_probable_prime(q)):
        return "p·q = N 且 p, q 为不同素数"
    if p % 4 != 3 or q % 4 != 3:
        return "p ≡ q ≡ 3 (mod 4)"
    if not 0 < x < n or math.gcd(x, n) != 1:
        return "x ∈ Z_N*"
    if y != x * x % n:
        return "y ≡ x²"
    if z != y * y % n:
        return "z ≡ y²"
    return None


def qrp_coin_result(proof_data: tuple[int, ...]) -> CoinResult:
    """proof_data = (N, z, 猜测, x, y, p, q)；胜负由 y 的奇偶决定。"""
    _, _, bet, _, y, _, _ = proof_data
    outcome = y & 1
    return CoinResult(outcome, _bet_winner(bet, outcome), proof_data)


def _qrp_party_a(bits: int):
    def party(ctx: PartyContext) -> PartyScript:
        puzzle: CoinPuzzle | None = ctx.input
        modulus = puzzle.modulus if puzzle else gen_blum(bits, ctx.rng)
        n = modulus.modulus
        x = puzzle.x if puzzle and puzzle.x is not None else sample_unit(n, ctx.rng)
        y, z = qrp_coin_puzzle(x, n)
        ctx.remember("x", x)
        ctx.remember("modulus", modulus)
        yield ctx.send(STEP_COMMITMENT, tags.COIN_QRP_PUZZLE, encode_ints(n, z))

        message = yield ctx.recv(STEP_BET, tags.COIN_BET)
        bet = _read_bet(ctx, message.payload)
        reveal = (x, y, modulus.p, modulus.q)
        yield ctx.send(STEP_OPENING, tags.COIN_QRP_REVEAL, encode_ints(*reveal))
        return qrp_coin_result((n, z, bet, *reveal))

    return party


def _qrp_party_b(ctx: PartyContext) -> PartyScript:
    message = yield ctx.recv(STEP_COMMITMENT, tags.COIN_QRP_PUZZLE)
    n, z = decode_ints(message.payload, 2)
    bet = _draw_bet(ctx)
    yield ctx.send(STEP_BET, tags.COIN_BET, encode_u8(bet))

    message = yield ctx.recv(STEP_OPENING, tags.COIN_QRP_REVEAL)
    reveal = decode_ints(message.payload, 4)
    failed = qrp_coin_check(n, z, *reveal)
    if failed is not None:
        logger.warning("⚠️ QRP 抛硬币: A 作弊，未通过 %s", failed)
        ctx.fail(STEP_VERIFICATION, f"A 作弊: 未通过 {failed}")
    return qrp_coin_result((n, z, bet, *reveal))


def _qrp_expected(view_a: LocalView, view_b: LocalView) -> tuple[CoinResult, CoinResult]:
    modulus: BlumModulus = view_a.notes["modulus"]
    x = view_a.notes["x"]
    y, z = qrp_coin_puzzle(x, modulus.modulus)
    result = qrp_coin_result(
        (modulus.modulus, z, view_b.notes["bet"], x, y, modulus.p, modulus.q)
    )
    return result, result


def make_coin_flip_qrp(bits: int = DEFAULT_COIN_BITS) -> ProtocolDefinition:
    """input_a 为 CoinPuzzle 或 None；input_b 为猜测比特或 None（随机）。"""
    return ProtocolDefinition(
        name="coin-flip-qrp",
        family=tags.FAMILY,
        description="QRP 抛硬币：B 猜 y 的奇偶",
        party_a=_qrp_party_a(bits),
        party_b=_qrp_party_b,
        tags=tags.describe(tags.COIN_QRP_PUZZLE, tags.COIN_BET, tags.COIN_QRP_REVEAL),
        output_domains=(COIN_OUTPUT, COIN_OUTPUT),
        expected=_qrp_expected,
        params={"bits": bits},
    )


# endregion


# region 一般形式（离散对数）
def general_coin_result(proof_data: tuple[int, ...]) -> CoinResult:
    """proof_data = (p, g, y, 猜测, x)；胜负由 x 的奇偶决定。"""
    _, _, _, bet, x = proof_data
    outcome = x & 1
    return CoinResult(outcome, _bet_winner(bet, outcome), proof_data)


def _general_party_a(bits: int):
    def party(ctx: PartyContext) -> PartyScript:
        field: FieldContext = ctx.input or gen_field(bits, ctx.rng)
        # 定义域 {0, …, p−2} 中奇偶各半
        x = ctx.rng.randrange(0, field.p - 1)
        y = field.exp(x)
        ctx.remember("x", x)
        ctx.remember("field", field)
        yield ctx.send(STEP_COMMITMENT, tags.COIN_GENERAL_COMMIT, encode_ints(field.p, field.g, y))

        message = yield ctx.recv(STEP_BET, tags.COIN_BET)
        bet = _read_bet(ctx, message.payload)
        yield ctx.send(STEP_OPENING, tags.COIN_GENERAL_REVEAL, encode_ints(x))
        return general_coin_result((field.p, field.g, y, bet, x))

    return party


def _general_party_b(ctx: PartyContext) -> PartyScript:
    message = yield ctx.recv(STEP_COMMITMENT, tags.COIN_GENERAL_COMMIT)
    p, g, y = decode_ints(message.payload, 3)
    if p < 5 or not is_probable_prime(p) or not is_generator(g, p):
        ctx.fail(STEP_COMMITMENT, "g 不是 Z_p* 的生成元，h 不是单射")
    bet = _draw_bet(ctx)
    yield ctx.send(STEP_BET, tags.COIN_BET, encode_u8(bet))

    message = yield ctx.recv(STEP_OPENING, tags.COIN_GENERAL_REVEAL)
    (x,) = decode_ints(message.payload, 1)
    if not 0 <= x <= p - 2 or pow(g, x, p) != y:
        logger.warning("⚠️ 一般抛硬币: A 公开的 x 与承诺不符")
        ctx.fail(STEP_VERIFICATION, "A 作弊: h(x) ≠ y")
    return general_coin_result((p, g, y, bet, x))


def _general_expected(view_a: LocalView, view_b: LocalView) -> tuple[CoinResult, CoinResult]:
    field: FieldContext = view_a.notes["field"]
    x = view_a.notes["x"]
    result = general_coin_result((field.p, field.g, field.exp(x), view_b.notes["bet"], x))
    return result, result


def make_coin_flip_general(bits: int = DEFAULT_COIN_BITS) -> ProtocolDefinition:
    """input_a 为 FieldContext 或 None（A 自己生成）；input_b 为猜测比特或 None。"""
    return ProtocolDefinition(
        name="coin-flip-general",
        family=tags.FAMILY,
        description="一般抛硬币：h(x) = g^x，B 猜 x 的奇偶",
        party_a=_general_party_a(bits),
        party_b=_general_party_b,
        tags=tags.describe(tags.COIN_GENERAL_COMMIT, tags.COIN_BET, tags.COIN_GENERAL_REVEAL),
        output_domains=(COIN_OUTPUT, COIN_OUTPUT),
        expected=_general_expected,
        params={"bits": bits},
    )


# endregion


# region Rabin OT
def ot_coin_result(proof_data: tuple[int, ...]) -> CoinResult:
    """proof_data = (N, x, 平方根)；平方根 ≢ ±x 时 B 得到分解并获胜。"""
    n, x, root = proof_data
    outcome = 0 if rabin_receiver_outcome(x, root, n) is None else 1
    return CoinResult(outcome, ROLE_B if outcome else ROLE_A, proof_data)


def _ot_party_a(bits: int):
    def party(ctx: PartyContext) -> PartyScript:
        modulus: BlumModulus = ctx.input or gen_blum(bits, ctx.rng)
        ctx.remember("modulus", modulus)
        sub = ctx.sub(OT_PREFIX)
        yield from rabin_sender(sub, modulus)

        message = yield ctx.recv(STEP_CLAIM, tags.COIN_OT_CLAIM)
        (x,) = decode_ints(message.payload, 1)
        n, root = modulus.modulus, sub.recall("root")
        if not 0 < x < n or x * x % n != root * root % n:
            ctx.fail(STEP_CLAIM, "B 声明的 x 与传输中的 x² 不符")
        return ot_coin_result((n, x, root))

    return party


def _ot_party_b(ctx: PartyContext) -> PartyScript:
    sub = ctx.sub(OT_PREFIX)
    yield from rabin_receiver(sub)
    x = sub.recall("x")
    yield ctx.send(STEP_CLAIM, tags.COIN_OT_CLAIM, encode_ints(x))
    return ot_coin_result((sub.recall("n"), x, sub.recall("received_root")))


def _ot_expected(view_a: LocalView, view_b: LocalView) -> tuple[CoinResult, CoinResult]:
    modulus: BlumModulus = view_a.notes["modulus"]
    result = ot_coin_result(
        (modulus.modulus, view_b.notes[f"{OT_PREFIX}x"], view_a.notes[f"{OT_PREFIX}root"])
    )
    return result, result


def make_coin_flip_ot(bits: int = DEFAULT_COIN_BITS) -> ProtocolDefinition:
    """input_a 为 BlumModulus 或 None；input_b 为 None。"""
    return ProtocolDefinition(
        name="coin-flip-ot",
        family=tags.FAMILY,
        description="Rabin OT 抛硬币：B 得到 A 的分解即获胜",
        party_a=_ot_party_a(bits),
        party_b=_ot_party_b,
        tags=ot_tags.describe(ot_tags.RABIN_MODULUS, ot_tags.RABIN_SQUARE, ot_tags.RABIN_ROOT)
        | tags.describe(tags.COIN_OT_CLAIM),
        output_domains=(COIN_OUTPUT, COIN_OUTPUT),
        expected=_ot_expected,
        params={"bits": bits},
    )


# endregion


# region 比特承诺
def commit_coin_result(proof_data: tuple[int, ...]) -> CoinResult:
    """proof_data = (a, b)；结果为 a ⊕ b，B 猜中 a（结果为 0）时获胜。"""
    a, b = proof_data
    outcome = a ^ b
    return CoinResult(outcome, ROLE_A if outcome else ROLE_B, proof_data)


def _commit_party_a(bits: int):
    def party(ctx: PartyContext) -> PartyScript:
        a = ctx.input if ctx.input is not None else ctx.rng.bit()
        ctx.remember("a", a)
        modulus = gen_blum(bits, ctx.rng)
        committed = qrp_commit(
            a, QrpParams(modulus, sample_nonresidue_jacobi1(modulus, ctx.rng)), ctx.rng
        )
        commitment = committed.commitment
        yield ctx.send("Set-up", commit_tags.COMMIT_PARAMS, commitment.public_params)
        yield ctx.send(STEP_COMMITMENT, commit_tags.COMMIT_WITNESS, commitment.witness)

        message = yield ctx.recv(STEP_BET, tags.COIN_BET)
        b = _read_bet(ctx, message.payload)
        yield ctx.send(STEP_OPENING, commit_tags.COMMIT_OPENING, committed.opening.encode())
        return commit_coin_result((a, b))

    return party


def _commit_party_b(ctx: PartyContext) -> PartyScript:
    params = yield ctx.recv("Set-up", commit_tags.COMMIT_PARAMS)
    witness = yield ctx.recv(STEP_COMMITMENT, commit_tags.COMMIT_WITNESS)
    b = _draw_bet(ctx)
    yield ctx.send(STEP_BET, tags.COIN_BET, encode_u8(b))

    message = yield ctx.recv(STEP_OPENING, commit_tags.COMMIT_OPENING)
    opening = Opening.decode(message.payload)
    verdict = verify_commitment(Commitment(QRP, params.payload, witness.payload), opening)
    if not verdict:
        ctx.fail(STEP_VERIFICATION, f"A 作弊: 承诺未通过 {verdict.failed_predicate}")
    return commit_coin_result((opening.committed_value, b))


def _commit_expected(view_a: LocalView, view_b: LocalView) -> tuple[CoinResult, CoinResult]:
    result = commit_coin_result((view_a.notes["a"], view_b.notes["bet"]))
    return result, result


def make_coin_flip_commit(bits: int = DEFAULT_COIN_BITS) -> ProtocolDefinition:
    """input_a 为 A 的比特 a 或 None；input_b 为 b 或 None。"""
    return ProtocolDefinition(
        name="coin-flip-commit",
        family=tags.FAMILY,
        description="承诺抛硬币：A 承诺 a，B 给出 b，结果 a ⊕ b",
        party_a=_commit_party_a(bits),
        party_b=_commit_party_b,
        tags=commit_tags.describe(
            commit_tags.COMMIT_PARAMS, commit_tags.COMMIT_WITNESS, commit_tags.COMMIT_OPENING
        )
        | tags.describe(tags.COIN_BET),
        output_domains=(COIN_OUTPUT, COIN_OUTPUT),
        expected=_commit_expected,
        params={"bits": bits},
    )


# endregion

__all__ = [
    "CoinPuzzle",
    "CoinResult",
    "commit_coin_result",
    "general_coin_result",
    "make_coin_flip_commit",
    "make_coin_flip_general",
    "make_coin_flip_ot",
    "make_coin_flip_qrp",
    "ot_coin_result",
    "qrp_coin_check",
    "qrp_coin_puzzle",
    "qrp_coin_result",
]
