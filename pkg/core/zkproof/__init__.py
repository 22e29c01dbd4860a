# region 零知识证明导出
from . import tags
from .graph import (
    GraphCheatingProver,
    GraphRoundProver,
    GraphRoundVerifier,
    fake_cycle_graph,
    graph_round_ok,
    make_graph_zkp,
)
from .qnr import QnrInstance, make_qnr_proof, qnr_prover, qnr_verifier
from .qrp import (
    QrpCheatingProver,
    QrpIdentity,
    QrpRoundProver,
    QrpRoundVerifier,
    extract_secret,
    gen_qrp_identity,
    make_qrp_zkp,
    qrp_response,
    qrp_round_ok,
)
from .rounds import (
    DEFAULT_ROUNDS,
    MAX_ROUNDS,
    RoundProver,
    RoundVerifier,
    ZkVerdict,
    prove_rounds,
    verify_rounds,
)
from .simulate import (
    DEFAULT_RETRY_BUDGET,
    SimulatedRound,
    SimulatedTranscript,
    SimulationBudgetExceeded,
    VerifierChallenger,
    graph_simulated_ok,
    graph_zkp_simulate,
    qrp_simulated_ok,
    qrp_zkp_simulate,
)

__all__ = [
    "DEFAULT_RETRY_BUDGET",
    "DEFAULT_ROUNDS",
    "MAX_ROUNDS",
    "GraphCheatingProver",
    "GraphRoundProver",
    "GraphRoundVerifier",
    "QnrInstance",
    "QrpCheatingProver",
    "QrpIdentity",
    "QrpRoundProver",
    "QrpRoundVerifier",
    "RoundProver",
    "RoundVerifier",
    "SimulatedRound",
    "SimulatedTranscript",
    "SimulationBudgetExceeded",
    "VerifierChallenger",
    "ZkVerdict",
    "extract_secret",
    "fake_cycle_graph",
    "gen_qrp_identity",
    "graph_round_ok",
    "graph_simulated_ok",
    "graph_zkp_simulate",
    "make_graph_zkp",
    "make_qrp_zkp",
    "prove_rounds",
    "make_qnr_proof",
    "qnr_prover",
    "qnr_verifier",
    "qrp_response",
    "qrp_round_ok",
    "qrp_simulated_ok",
    "qrp_zkp_simulate",
    "tags",
    "verify_rounds",
]
# endregion
