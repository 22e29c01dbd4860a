"""安全性质的可复用检查。

- check_correctness：双方输出与函数定义 f 在真实输入与随机选择上的取值一致；
- check_fairness：协议在任何秘密相关消息之前公开双方输出域与消息类型；
- transcript_distribution / compare_distributions：模拟范式的统计检验。
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Hashable
from dataclasses import dataclass, field
from typing import Any

from scipy.stats import chi2_contingency

from ..common.exceptions import ParameterError
from ..common.log import logger
from ..common.rng import derive_seed
from .driver import SessionResult, run_session
from .errors import ROLE_A, ROLE_B
from .message import encode_message, tag_info
from .party import ProtocolDefinition

MIN_DISTRIBUTION_TRIALS = 1000


@dataclass(frozen=True, slots=True)
class CheckResult:
    ok: bool
    diagnostics: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


# region 正确性与公平性
def check_correctness(
    result: SessionResult, protocol: ProtocolDefinition
) -> CheckResult:
    if result.abort is not None:
        return CheckResult(
            False, [f"会话在 {result.abort.step} 中止 ({result.abort.kind}): {result.abort.reason}"]
        )
    if protocol.expected is None:
        return CheckResult(False, [f"{protocol.name} 未声明函数定义"])
    assert result.outcome_a is not None and result.outcome_b is not None
    expected = protocol.expected(result.outcome_a.local_view, result.outcome_b.local_view)
    diagnostics = []
    for role, want, got in zip(
        (ROLE_A, ROLE_B), expected, result.outputs, strict=True
    ):
        if want != got:
            diagnostics.append(f"{role}: 期望 {want!r}, 实际 {got!r}")
    return CheckResult(not diagnostics, diagnostics)


def check_fairness(protocol: ProtocolDefinition) -> CheckResult:
    diagnostics = []
    if len(protocol.output_domains) != 2 or not all(
        d.strip() for d in protocol.output_domains
    ):
        diagnostics.append("未公开双方的输出域")
    if not protocol.tags:
        diagnostics.append("未公开消息类型")
    for tag, description in protocol.tags.items():
        if not description.strip():
            diagnostics.append(f"消息类型 0x{tag:02x} 缺少说明")
        if tag_info(tag) is None:
            diagnostics.append(f"消息类型 0x{tag:02x} 未登记")
    return CheckResult(not diagnostics, diagnostics)


# endregion


# region 分布检验
def wire_view(result: SessionResult, role: str) -> Hashable:
    """默认投影：线路上的全部消息（双方都能看到）。"""
    return b"".join(
        r.direction.encode() + encode_message(r.message) for r in result.transcript
    )


def transcript_distribution(
    protocol: ProtocolDefinition,
    input_a: Any,
    input_b: Any,
    role: str,
    trials: int,
    *,
    seed_start: int = 0,
    project: Callable[[SessionResult, str], Hashable] | None = None,
) -> Counter:
    if trials < MIN_DISTRIBUTION_TRIALS:
        raise ParameterError(
            f"分布统计至少需要 {MIN_DISTRIBUTION_TRIALS} 次试验: {trials}"
        )
    project = project or wire_view
    table: Counter = Counter()
    for index in range(seed_start, seed_start + trials):
        result = run_session(
            protocol,
            input_a,
            input_b,
            derive_seed(index, "distribution/A"),
            derive_seed(index, "distribution/B"),
        ).raise_for_abort()
        table[project(result, role)] += 1
    logger.info(
        "📊 %s 视图分布 (%s): %d 次试验, %d 个不同取值",
        protocol.name,
        role,
        trials,
        len(table),
    )
    return table


def compare_distributions(table_a: Counter, table_b: Counter) -> float:
    """列联表卡方检验的 p 值；两表只有一个共同取值时视为相同分布。"""
    keys = sorted(set(table_a) | set(table_b), key=repr)
    if len(keys) < 2:
        return 1.0
    observed = [[table_a.get(k, 0) for k in keys], [table_b.get(k, 0) for k in keys]]
    _, p_value, _, _ = chi2_contingency(observed)
    return float(p_value)


# endregion

__all__ = [
    "MIN_DISTRIBUTION_TRIALS",
    "CheckResult",
    "check_correctness",
    "check_fairness",
    "compare_distributions",
    "transcript_distribution",
    "wire_view",
]
