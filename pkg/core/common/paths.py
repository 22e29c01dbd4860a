# region 数据路径管理器（延迟初始化）
"""
数据目录优先读取环境变量 TWOPARTY_DATA_DIR。
在首次访问时延迟初始化，测试可以在导入后再修改环境变量。
"""

import os
from pathlib import Path

PROJECT_NAME = "twoparty_protocols"
DATA_DIR_ENV = "TWOPARTY_DATA_DIR"

# 路径缓存
_data_dir: Path | None = None


def _get_data_dir() -> Path:
    """获取数据目录（延迟初始化）"""
    global _data_dir
    if _data_dir is not None:
        return _data_dir

    override = os.environ.get(DATA_DIR_ENV, "").strip()
    if override:
        _data_dir = Path(override).expanduser()
    else:
        # 回退到仓库目录（开发/测试环境）
        _data_dir = Path(__file__).resolve().parents[2] / "data"
    _data_dir.mkdir(parents=True, exist_ok=True)
    return _data_dir


def reset_data_dir() -> None:
    """清空路径缓存，下一次访问重新解析。"""
    global _data_dir
    _data_dir = None


def _ensure_dir(path: Path) -> Path:
    """确保目录存在"""
    path.mkdir(parents=True, exist_ok=True)
    return path


# region 路径获取函数
def get_transcript_path() -> Path:
    """获取会话记录目录"""
    return _ensure_dir(_get_data_dir() / "transcripts")


def get_stats_path() -> Path:
    """获取统计报告目录"""
    return _ensure_dir(_get_data_dir() / "stats")


# endregion
# endregion
