"""单次运行的参数。命令行与配置文件的值合并后经 msgspec.convert 校验。"""

from __future__ import annotations

import msgspec

from ..common.exceptions import ParameterError
from ..common.rng import SEED_BITS, RandomStream
from ..session.transport import TRANSPORTS

DEFAULT_BITS = 32
DEFAULT_VERTICES = 8
DEFAULT_ROUNDS = 20
DEFAULT_MAX_ROUNDS = 32
DEFAULT_BIT_WIDTH = 8
DEFAULT_NOISE_EDGES = 4


class RunConfig(msgspec.Struct, kw_only=True, frozen=True):
    protocol: str
    seed_a: int
    seed_b: int
    bits: int = DEFAULT_BITS
    n: int = DEFAULT_VERTICES
    k: int | None = None
    m: int = DEFAULT_ROUNDS
    rounds: int = DEFAULT_MAX_ROUNDS
    bit_width: int = DEFAULT_BIT_WIDTH
    count: int = 2
    noise: int = DEFAULT_NOISE_EDGES
    transport: str = "inproc"
    output: str | None = None
    secret_a: str | None = None
    secret_b: str | None = None
    choice: int | None = None
    contract: str = "contract"

    def __post_init__(self) -> None:
        for name in ("seed_a", "seed_b"):
            seed = getattr(self, name)
            if not 0 <= seed < 1 << SEED_BITS:
                raise ParameterError(f"{name} 必须是 {SEED_BITS} 位非负整数: {seed}")
        if self.transport not in TRANSPORTS:
            raise ParameterError(f"未知传输方式: {self.transport}")
        for name in ("bits", "n", "bit_width", "count"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} 必须为正: {getattr(self, name)}")
        for name in ("m", "rounds", "noise"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} 不能为负: {getattr(self, name)}")
        if self.k is not None and self.k < 1:
            raise ParameterError(f"k 必须为正: {self.k}")

    def input_rng(self) -> RandomStream:
        """生成双方输入的随机流，只由两个种子决定，离线校验可重建。"""
        return RandomStream.derive(self.seed_a, f"input/{self.seed_b}")


def build_run_config(values: dict) -> RunConfig:
    try:
        return msgspec.convert(values, RunConfig)
    except msgspec.ValidationError as exc:
        raise ParameterError(f"运行参数非法: {exc}") from exc


__all__ = ["RunConfig", "build_run_config"]
