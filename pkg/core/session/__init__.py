# region 会话框架导出
from .driver import PartyRunner, SessionResult, run_session
from .errors import (
    ROLE_A,
    ROLE_B,
    DeadlockError,
    FramingError,
    SessionAbort,
    VerificationFailed,
)
from .message import (
    HEADER_SIZE,
    MAX_PAYLOAD,
    Message,
    TagInfo,
    decode_message,
    encode_message,
    register_tag,
    registered_tags,
    tag_info,
)
from .party import (
    LocalView,
    PartyContext,
    PartyFactory,
    PartyOutcome,
    PartyScript,
    ProtocolDefinition,
    Recv,
    Send,
)
from .properties import (
    MIN_DISTRIBUTION_TRIALS,
    CheckResult,
    check_correctness,
    check_fairness,
    compare_distributions,
    transcript_distribution,
    wire_view,
)
from .replay import ReplayIssue, issue_to_abort, replay_party, replay_transcript
from .transcript import (
    A_TO_B,
    B_TO_A,
    Transcript,
    TranscriptHeader,
    TranscriptRecord,
    format_log,
    make_session_id,
    parse_log,
    read_log,
    write_log,
)
from .transport import TRANSPORTS, InProcTransport, LoopbackTransport
from .wrappers import bind_associated_data, substitute

__all__ = [
    "A_TO_B",
    "B_TO_A",
    "HEADER_SIZE",
    "MAX_PAYLOAD",
    "MIN_DISTRIBUTION_TRIALS",
    "ROLE_A",
    "ROLE_B",
    "TRANSPORTS",
    "CheckResult",
    "DeadlockError",
    "FramingError",
    "InProcTransport",
    "LocalView",
    "LoopbackTransport",
    "Message",
    "PartyContext",
    "PartyFactory",
    "PartyOutcome",
    "PartyRunner",
    "PartyScript",
    "ProtocolDefinition",
    "Recv",
    "ReplayIssue",
    "Send",
    "SessionAbort",
    "SessionResult",
    "TagInfo",
    "Transcript",
    "TranscriptHeader",
    "TranscriptRecord",
    "VerificationFailed",
    "bind_associated_data",
    "check_correctness",
    "check_fairness",
    "compare_distributions",
    "decode_message",
    "encode_message",
    "format_log",
    "issue_to_abort",
    "make_session_id",
    "parse_log",
    "read_log",
    "register_tag",
    "registered_tags",
    "replay_party",
    "replay_transcript",
    "run_session",
    "substitute",
    "tag_info",
    "transcript_distribution",
    "wire_view",
    "write_log",
]
# endregion
