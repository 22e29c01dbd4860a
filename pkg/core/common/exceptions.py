# region 公共异常
class ProtocolError(RuntimeError):
    """协议库异常基类。"""


class ParameterError(ProtocolError, ValueError):
    """参数不满足前置条件。"""


class PayloadError(ProtocolError):
    """消息负载无法解码。"""


class OracleLimitExceeded(ProtocolError):
    """实例超出暴力求解上限。"""


# endregion
