"""协议目录：协议标识 → 构造、输入准备与统计指标。

输入只由 RunConfig 决定（含种子），因此离线校验可以原样重建。
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from ..commitment import make_commit_dlp, make_commit_graph, make_commit_qrp
from ..common.bits import BitString
from ..common.exceptions import ParameterError
from ..common.rng import RandomStream
from ..derived import (
    ComparisonInput,
    make_byzantine_agreement,
    make_coin_flip_commit,
    make_coin_flip_general,
    make_coin_flip_ot,
    make_coin_flip_qrp,
    make_contract_sign,
    make_contract_sign_graph,
    make_millionaires,
    make_secret_exchange_graph,
    make_string_verification,
    make_tscp_general,
)
from ..derived.compare import DEFAULT_STRING_K, DEFAULT_TSCP_K, POSSIBLY_EQUAL
from ..graphs import gen_hamiltonian_graph, validate_cycle
from ..numtheory import gen_blum, sample_nonresidue_jacobi1
from ..oblivious import (
    DEFAULT_SECRET_BITS,
    OtSecretIsomorphism,
    TwoSecrets,
    gen_sale_instances,
    make_dlp_1of2_ot,
    make_graph_1of2_ot,
    make_graph_ot,
    make_ot_from_two_1of2,
    make_rabin_ot,
    make_secret_sale,
)
from ..session.errors import ROLE_B
from ..session.party import ProtocolDefinition
from ..zkproof import QnrInstance, gen_qrp_identity, make_graph_zkp, make_qnr_proof, make_qrp_zkp
from .run_config import RunConfig

Inputs = tuple[Any, Any]
Outputs = tuple[Any, Any]


@dataclass(frozen=True, slots=True)
class CatalogEntry:
    protocol_id: str
    family: str
    summary: str
    build: Callable[[RunConfig], ProtocolDefinition]
    inputs: Callable[[RunConfig, RandomStream], Inputs]
    metrics: Callable[[Inputs, Outputs], dict[str, float]]


def _rate(flag: bool) -> float:
    return 1.0 if flag else 0.0


# region 输入解析
def _bit(text: str | None, rng: RandomStream) -> int:
    if text is None:
        return rng.bit()
    if text.strip() not in ("0", "1"):
        raise ParameterError(f"需要单个比特: {text!r}")
    return int(text)


def _bit_string(text: str | None, n: int, rng: RandomStream) -> BitString:
    return BitString.from_str(text) if text is not None else BitString.random(n, rng)


def _wealth(text: str | None, bit_width: int, rng: RandomStream) -> int:
    if text is None:
        return rng.getrandbits(bit_width)
    try:
        value = int(text, 0)
    except ValueError as exc:
        raise ParameterError(f"财富必须是整数: {text!r}") from exc
    if not 0 <= value < 1 << bit_width:
        raise ParameterError(f"财富 {value} 超出 {bit_width} 位")
    return value


def _choice(config: RunConfig, rng: RandomStream, count: int = 2) -> int:
    if config.choice is None:
        return rng.randbelow(count)
    if not 0 <= config.choice < count:
        raise ParameterError(f"选择下标越界: {config.choice}")
    return config.choice


def _pair_isomorphisms(config: RunConfig, rng: RandomStream) -> Inputs:
    return OtSecretIsomorphism.generate(config.n, rng), OtSecretIsomorphism.generate(config.n, rng)


def _two_moduli(config: RunConfig, rng: RandomStream) -> Inputs:
    return gen_blum(config.bits, rng), gen_blum(config.bits, rng)


def _qnr_inputs(config: RunConfig, rng: RandomStream) -> Inputs:
    modulus = gen_blum(config.bits, rng)
    return QnrInstance(modulus, sample_nonresidue_jacobi1(modulus, rng)), None


def _comparison_pair(config: RunConfig, rng: RandomStream) -> Inputs:
    k = config.k or DEFAULT_TSCP_K
    a = _bit_string(config.secret_a, config.n, rng)
    b = _bit_string(config.secret_b, config.n, rng)
    return ComparisonInput.random(a, k, rng), ComparisonInput.random(b, k, rng)


# endregion


# region 指标
def _obtained(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    return {"success_rate": _rate(outputs[1] is not None)}


def _accepted(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    verdict = outputs[1]
    return {
        "accept_rate": _rate(verdict.accepted),
        "round_pass_mean": sum(verdict.round_results) / max(1, verdict.rounds),
    }


def _opened(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    committed = inputs[0]
    ok = outputs[1] is not None if committed is None else outputs[1] == committed
    return {"accept_rate": _rate(ok)}


def _coin(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    result_a, result_b = outputs
    return {
        "b_win_rate": _rate(result_b.winner == ROLE_B),
        "agree_rate": _rate(result_a == result_b),
    }


def _verdicts(secrets: tuple[Any, Any], outputs: Outputs) -> dict[str, float]:
    metrics = {
        "equal_rate": _rate(outputs[0] == POSSIBLY_EQUAL),
        "agree_rate": _rate(outputs[0] == outputs[1]),
    }
    if secrets[0] != secrets[1]:
        metrics["false_equal_rate"] = metrics["equal_rate"]
    return metrics


def _tscp(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    return _verdicts((inputs[0].secret, inputs[1].secret), outputs)


def _exchange(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    got_a = outputs[0] is not None and outputs[0].obtained
    got_b = outputs[1] is not None and outputs[1].obtained
    return {
        "a_obtained_rate": _rate(got_a),
        "b_obtained_rate": _rate(got_b),
        "neither_rate": _rate(not got_a and not got_b),
    }


def _contract(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    outcome = outputs[0]
    return {"signed_rate": _rate(outcome.signed), "rounds_mean": float(outcome.rounds)}


def _millionaires(inputs: Inputs, outputs: Outputs) -> dict[str, float]:
    oracle = 0 if inputs[0] > inputs[1] else 1
    return {
        "a_richer_rate": _rate(outputs[0] == 0),
        "oracle_match_rate": _rate(outputs[0] == oracle and outputs[1] == oracle),
    }


# endregion


def _entries() -> list[CatalogEntry]:
    return [
        # region 不经意传输
        CatalogEntry(
            "rabin-ot",
            "oblivious",
            "Rabin OT：以 1/2 概率传出 N 的分解",
            lambda c: make_rabin_ot(),
            lambda c, rng: (gen_blum(c.bits, rng), None),
            _obtained,
        ),
        CatalogEntry(
            "graph-ot",
            "oblivious",
            "图同构 OT：以 1/2 概率传出 G1→G2 的同构",
            lambda c: make_graph_ot(),
            lambda c, rng: (OtSecretIsomorphism.generate(c.n, rng), None),
            _obtained,
        ),
        CatalogEntry(
            "dlp-1of2-ot",
            "oblivious",
            "离散对数 1-2 OT：B 得到所选的 k 位秘密",
            lambda c: make_dlp_1of2_ot(c.k or DEFAULT_SECRET_BITS),
            lambda c, rng: (
                TwoSecrets(
                    BitString.random(c.k or DEFAULT_SECRET_BITS, rng),
                    BitString.random(c.k or DEFAULT_SECRET_BITS, rng),
                ),
                _choice(c, rng),
            ),
            lambda i, o: {"correct_rate": _rate(o[1] == i[0].pick(i[1]))},
        ),
        CatalogEntry(
            "graph-1of2-ot",
            "oblivious",
            "图 1-2 OT：B 得到所选图中的哈密顿回路",
            lambda c: make_graph_1of2_ot(),
            lambda c, rng: (gen_sale_instances(2, c.n, c.noise, rng), _choice(c, rng)),
            lambda i, o: {
                "correct_rate": _rate(o[1][0] == i[1] and validate_cycle(i[0][i[1]].graph, o[1][1]))
            },
        ),
        CatalogEntry(
            "secret-sale",
            "oblivious",
            "count 选 1 秘密出售",
            lambda c: make_secret_sale(c.count),
            lambda c, rng: (
                gen_sale_instances(c.count, c.n, c.noise, rng),
                _choice(c, rng, c.count),
            ),
            lambda i, o: {
                "correct_rate": _rate(o[1][0] == i[1] and validate_cycle(i[0][i[1]].graph, o[1][1]))
            },
        ),
        CatalogEntry(
            "ot-from-two-1of2",
            "oblivious",
            "由两次 1-2 OT 组合的 OT：以 1/4 概率得到同构",
            lambda c: make_ot_from_two_1of2(c.n),
            lambda c, rng: (None, OtSecretIsomorphism.generate(c.n, rng)),
            _obtained,
        ),
        # endregion
        # region 比特承诺
        CatalogEntry(
            "commit-qrp",
            "commitment",
            "QRP 比特承诺（打开时公开 p, q）",
            lambda c: make_commit_qrp(c.bits),
            lambda c, rng: (_bit(c.secret_a, rng), None),
            _opened,
        ),
        CatalogEntry(
            "commit-qrp-zk",
            "commitment",
            "QRP 比特承诺（零知识证明 y 为非剩余）",
            lambda c: make_commit_qrp(c.bits, zk_nonresidue=True, rounds=c.m),
            lambda c, rng: (_bit(c.secret_a, rng), None),
            _opened,
        ),
        CatalogEntry(
            "commit-dlp",
            "commitment",
            "DLP 承诺 y ≡ g^x",
            lambda c: make_commit_dlp(c.bits),
            lambda c, rng: (int(c.secret_a, 0) if c.secret_a is not None else None, None),
            _opened,
        ),
        CatalogEntry(
            "commit-graph",
            "commitment",
            "图比特承诺",
            lambda c: make_commit_graph(c.n),
            lambda c, rng: (_bit(c.secret_a, rng), None),
            _opened,
        ),
        # endregion
        # region 零知识证明
        CatalogEntry(
            "zkp-qrp",
            "zkproof",
            "QRP 身份证明（m 轮）",
            lambda c: make_qrp_zkp(c.m),
            lambda c, rng: (gen_qrp_identity(c.bits, rng), None),
            _accepted,
        ),
        CatalogEntry(
            "zkp-qrp-cheat",
            "zkproof",
            "不知道 s 的 QRP 证明方",
            lambda c: make_qrp_zkp(c.m, cheating=True),
            lambda c, rng: (gen_qrp_identity(c.bits, rng), None),
            _accepted,
        ),
        CatalogEntry(
            "zkp-graph",
            "zkproof",
            "哈密顿回路零知识证明（m 轮）",
            lambda c: make_graph_zkp(c.m),
            lambda c, rng: (gen_hamiltonian_graph(c.n, c.noise, rng), None),
            _accepted,
        ),
        CatalogEntry(
            "zkp-graph-cheat",
            "zkproof",
            "不知道回路的图证明方",
            lambda c: make_graph_zkp(c.m, cheating=True),
            lambda c, rng: (gen_hamiltonian_graph(c.n, c.noise, rng), None),
            _accepted,
        ),
        CatalogEntry(
            "zkp-qnr",
            "zkproof",
            "二次非剩余交互证明",
            lambda c: make_qnr_proof(c.m),
            _qnr_inputs,
            _accepted,
        ),
        # endregion
        # region 派生协议
        CatalogEntry(
            "coin-flip-qrp",
            "derived",
            "QRP 抛硬币",
            lambda c: make_coin_flip_qrp(c.bits),
            lambda c, rng: (None, c.choice),
            _coin,
        ),
        CatalogEntry(
            "coin-flip-general",
            "derived",
            "一般抛硬币 h(x) = g^x",
            lambda c: make_coin_flip_general(c.bits),
            lambda c, rng: (None, c.choice),
            _coin,
        ),
        CatalogEntry(
            "coin-flip-ot",
            "derived",
            "Rabin OT 抛硬币",
            lambda c: make_coin_flip_ot(c.bits),
            lambda c, rng: (None, None),
            _coin,
        ),
        CatalogEntry(
            "coin-flip-commit",
            "derived",
            "承诺抛硬币 a ⊕ b",
            lambda c: make_coin_flip_commit(c.bits),
            lambda c, rng: (None, c.choice),
            _coin,
        ),
        CatalogEntry(
            "secret-exchange-graph",
            "derived",
            "图同构秘密交换（m 轮）",
            lambda c: make_secret_exchange_graph(c.m),
            _pair_isomorphisms,
            _exchange,
        ),
        CatalogEntry(
            "contract-sign",
            "derived",
            "Rabin OT 合同签署",
            lambda c: make_contract_sign(c.contract.encode("utf-8"), c.rounds),
            _two_moduli,
            _contract,
        ),
        CatalogEntry(
            "contract-sign-graph",
            "derived",
            "图 OT 合同签署",
            lambda c: make_contract_sign_graph(c.contract.encode("utf-8"), c.rounds),
            _pair_isomorphisms,
            _contract,
        ),
        CatalogEntry(
            "tscp-general",
            "derived",
            "一般双方秘密比较",
            lambda c: make_tscp_general(c.n, c.k or DEFAULT_TSCP_K),
            _comparison_pair,
            _tscp,
        ),
        CatalogEntry(
            "byzantine-agreement",
            "derived",
            "拜占庭协定（n = k = 1）",
            lambda c: make_byzantine_agreement(),
            lambda c, rng: (_bit(c.secret_a, rng), _bit(c.secret_b, rng)),
            _verdicts,
        ),
        CatalogEntry(
            "string-verification",
            "derived",
            "比特串验证",
            lambda c: make_string_verification(c.n, c.k or DEFAULT_STRING_K),
            lambda c, rng: (
                _bit_string(c.secret_a, c.n, rng),
                _bit_string(c.secret_b, c.n, rng),
            ),
            _verdicts,
        ),
        CatalogEntry(
            "millionaires",
            "derived",
            "百万富翁问题",
            lambda c: make_millionaires(c.bit_width, c.k or DEFAULT_STRING_K),
            lambda c, rng: (
                _wealth(c.secret_a, c.bit_width, rng),
                _wealth(c.secret_b, c.bit_width, rng),
            ),
            _millionaires,
        ),
        # endregion
    ]


CATALOG: dict[str, CatalogEntry] = {entry.protocol_id: entry for entry in _entries()}
ALIASES = {
    "sv": "string-verification",
    "ba": "byzantine-agreement",
    "mp": "millionaires",
    "tscp": "tscp-general",
}


def resolve_protocol_id(name: str) -> str:
    return ALIASES.get(name, name)


def get_entry(name: str) -> CatalogEntry:
    entry = CATALOG.get(resolve_protocol_id(name))
    if entry is None:
        raise ParameterError(f"未知协议: {name}（可用: {', '.join(sorted(CATALOG))}）")
    return entry


def prepare_session(config: RunConfig) -> tuple[ProtocolDefinition, Any, Any]:
    """构造协议并从 config.input_rng() 准备双方输入。"""
    entry = get_entry(config.protocol)
    protocol = entry.build(config)
    input_a, input_b = entry.inputs(config, config.input_rng())
    return protocol, input_a, input_b


__all__ = [
    "ALIASES",
    "CATALOG",
    "CatalogEntry",
    "get_entry",
    "prepare_session",
    "resolve_protocol_id",
]
