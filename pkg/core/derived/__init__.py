# region 派生协议导出
from . import tags
from .coin import (
    CoinPuzzle,
    CoinResult,
    commit_coin_result,
    general_coin_result,
    make_coin_flip_commit,
    make_coin_flip_general,
    make_coin_flip_ot,
    make_coin_flip_qrp,
    ot_coin_result,
    qrp_coin_check,
    qrp_coin_puzzle,
    qrp_coin_result,
)
from .compare import (
    DIFFERENT,
    POSSIBLY_EQUAL,
    ComparisonInput,
    comparison_sums,
    comparison_verdict,
    make_byzantine_agreement,
    make_millionaires,
    make_string_verification,
    make_tscp_general,
    richer_output,
    tscp_exchange,
)
from .contract import (
    ABORTED,
    SIGNED,
    ContractOutcome,
    GraphKit,
    RabinKit,
    SigningKit,
    make_contract_sign,
    make_contract_sign_graph,
)
from .exchange import ExchangeResult, make_secret_exchange_graph, round_prefix

__all__ = [
    "ABORTED",
    "DIFFERENT",
    "POSSIBLY_EQUAL",
    "SIGNED",
    "CoinPuzzle",
    "CoinResult",
    "ComparisonInput",
    "ContractOutcome",
    "ExchangeResult",
    "GraphKit",
    "RabinKit",
    "SigningKit",
    "commit_coin_result",
    "comparison_sums",
    "comparison_verdict",
    "general_coin_result",
    "make_byzantine_agreement",
    "make_coin_flip_commit",
    "make_coin_flip_general",
    "make_coin_flip_ot",
    "make_coin_flip_qrp",
    "make_contract_sign",
    "make_contract_sign_graph",
    "make_millionaires",
    "make_secret_exchange_graph",
    "make_string_verification",
    "make_tscp_general",
    "ot_coin_result",
    "qrp_coin_check",
    "qrp_coin_puzzle",
    "qrp_coin_result",
    "richer_output",
    "round_prefix",
    "tags",
    "tscp_exchange",
]
# endregion
