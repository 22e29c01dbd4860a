"""配置读取工具。

配置文件为 TOML（msgspec.toml 解码），解码后以嵌套 dict 保存，
通过 "分组.键" 形式读取；非法值回退到默认值。
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import msgspec

from .exceptions import ParameterError
from .log import logger


def load_config_file(path: str | Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    config_path = Path(path).expanduser()
    try:
        data = msgspec.toml.decode(config_path.read_bytes())
    except FileNotFoundError as exc:
        raise ParameterError(f"配置文件不存在: {config_path}") from exc
    except msgspec.DecodeError as exc:
        raise ParameterError(f"配置文件格式错误: {exc}") from exc
    if not isinstance(data, dict):
        raise ParameterError("配置文件顶层必须是表")
    logger.debug("⚙️ 已加载配置文件: %s", config_path)
    return data


def get_config_value(config: Any, key: str, default: Any) -> Any:
    val = config
    for k in key.split("."):
        if isinstance(val, dict):
            val = val.get(k)
        else:
            return default
        if val is None:
            return default
    return val


def coerce_positive_int(value: object, default: int) -> int:
    if value is None:
        return default
    if isinstance(value, bool):
        return default
    try:
        if isinstance(value, (int, float)):
            parsed = int(value)
            return parsed if parsed > 0 else default
        text = str(value).strip()
        if text.isdigit():
            parsed = int(text)
            return parsed if parsed > 0 else default
    except Exception:
        return default
    return default


def coerce_choice(value: object, choices: tuple[str, ...], default: str) -> str:
    text = str(value).strip() if value is not None else ""
    return text if text in choices else default


__all__ = [
    "coerce_choice",
    "coerce_positive_int",
    "get_config_value",
    "load_config_file",
]
