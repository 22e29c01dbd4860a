# region 协议目录导出
from .entries import (
    ALIASES,
    CATALOG,
    CatalogEntry,
    get_entry,
    prepare_session,
    resolve_protocol_id,
)
from .run_config import RunConfig, build_run_config
from .stats import MIN_TRIALS, MetricSummary, StatsSummary, check_trials, summarize

__all__ = [
    "ALIASES",
    "CATALOG",
    "MIN_TRIALS",
    "CatalogEntry",
    "MetricSummary",
    "RunConfig",
    "StatsSummary",
    "build_run_config",
    "check_trials",
    "get_entry",
    "prepare_session",
    "resolve_protocol_id",
    "summarize",
]
# endregion
