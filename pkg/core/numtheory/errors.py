# region 异常定义
from ..common.exceptions import ProtocolError


class NotCoprimeError(ProtocolError, ValueError):
    """输入与模数有公因子（调用方泄漏了因子）。"""


class NotResidueError(ProtocolError, ValueError):
    """输入不是二次剩余。"""


class TrivialRootsError(ProtocolError, ValueError):
    """两个平方根满足 x ≡ ±y，无法分解模数。"""


# endregion
