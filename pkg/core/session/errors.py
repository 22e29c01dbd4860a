# region 会话中止
from ..common.exceptions import ProtocolError

ROLE_A = "A"
ROLE_B = "B"


class SessionAbort(ProtocolError):
    """会话中止；step 为出错步骤标签，party 为发现问题的一方。"""

    kind = "abort"

    def __init__(self, step: str, party: str, reason: str):
        super().__init__(f"[{party}] {step}: {reason}")
        self.step = step
        self.party = party
        self.reason = reason


class VerificationFailed(SessionAbort):
    """验证步骤失败（对方作弊或消息被篡改）。"""

    kind = "verification"


class FramingError(SessionAbort):
    """消息帧或负载格式错误。"""

    kind = "framing"


class DeadlockError(SessionAbort):
    """双方都在等待对方。"""

    kind = "deadlock"


# endregion
