# region 比特承诺导出
from . import tags
from .protocol import (
    commit_receiver,
    commit_sender,
    make_commit_dlp,
    make_commit_graph,
    make_commit_qrp,
)
from .schemes import (
    ACCEPT,
    DLP,
    GRAPH,
    QRP,
    SCHEMES,
    Commitment,
    Committed,
    Opening,
    QrpCommitter,
    QrpParams,
    VerifyResult,
    degree_certificate,
    dlp_commit,
    dlp_open,
    dlp_verify,
    graph_commit,
    graph_open,
    graph_verify,
    qrp_check_opening,
    qrp_commit,
    qrp_open,
    qrp_verify,
    qrp_witness,
    verify_commitment,
)

__all__ = [
    "ACCEPT",
    "DLP",
    "GRAPH",
    "QRP",
    "SCHEMES",
    "Commitment",
    "Committed",
    "Opening",
    "QrpCommitter",
    "QrpParams",
    "VerifyResult",
    "commit_receiver",
    "commit_sender",
    "degree_certificate",
    "dlp_commit",
    "dlp_open",
    "dlp_verify",
    "graph_commit",
    "graph_open",
    "graph_verify",
    "make_commit_dlp",
    "make_commit_graph",
    "make_commit_qrp",
    "qrp_check_opening",
    "qrp_commit",
    "qrp_open",
    "qrp_verify",
    "qrp_witness",
    "tags",
    "verify_commitment",
]
# endregion
