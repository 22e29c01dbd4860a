# region 公共模块导出
__all__ = [
    "PROJECT_NAME",
    "BitString",
    "OracleLimitExceeded",
    "ParameterError",
    "PayloadError",
    "PayloadReader",
    "ProtocolError",
    "RandomStream",
    "coerce_choice",
    "coerce_positive_int",
    "decode_ints",
    "encode_int",
    "encode_ints",
    "encode_u16",
    "encode_u8",
    "get_config_value",
    "load_config_file",
    "logger",
    "low_bits",
    "xor_all",
    # 路径获取函数
    "get_stats_path",
    "get_transcript_path",
]

from .bits import BitString, low_bits, xor_all
from .codec import (
    PayloadReader,
    decode_ints,
    encode_int,
    encode_ints,
    encode_u8,
    encode_u16,
)
from .config import (
    coerce_choice,
    coerce_positive_int,
    get_config_value,
    load_config_file,
)
from .exceptions import (
    OracleLimitExceeded,
    ParameterError,
    PayloadError,
    ProtocolError,
)
from .log import logger
from .paths import (
    PROJECT_NAME,
    # 路径获取函数
    get_stats_path,
    get_transcript_path,
)
from .rng import RandomStream

# endregion
