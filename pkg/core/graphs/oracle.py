"""暴力同构求解（受 ORACLE_MAX_VERTICES 约束）。

流程：
1. 顶点数超限直接拒绝；
2. 边数、度序列不一致时立即判定不同构；
3. 其余交给 networkx 的 GraphMatcher 做回溯搜索。
"""

from __future__ import annotations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from ..common.exceptions import OracleLimitExceeded, ParameterError
from .graph import Graph, Permutation

ORACLE_MAX_VERTICES = 12


def _to_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges)
    return graph


def _check_bound(n: int) -> None:
    if n > ORACLE_MAX_VERTICES:
        raise OracleLimitExceeded(
            f"实例过大: {n} 个顶点超过暴力求解上限 {ORACLE_MAX_VERTICES}"
        )


def find_isomorphism(g: Graph, h: Graph) -> Permutation | None:
    """返回满足 apply_perm(g, π) = h 的某个 π，不存在时返回 None。"""
    if g.n != h.n:
        raise ParameterError(f"顶点数不一致: {g.n} != {h.n}")
    _check_bound(g.n)
    if len(g.edges) != len(h.edges) or g.degree_sequence() != h.degree_sequence():
        return None
    matcher = GraphMatcher(_to_networkx(g), _to_networkx(h))
    for mapping in matcher.isomorphisms_iter():
        return Permutation(tuple(mapping[v] for v in range(g.n)))
    return None


def automorphism_count(g: Graph, limit: int | None = None) -> int:
    _check_bound(g.n)
    nx_graph = _to_networkx(g)
    count = 0
    for _ in GraphMatcher(nx_graph, nx_graph).isomorphisms_iter():
        count += 1
        if limit is not None and count >= limit:
            break
    return count


def is_rigid(g: Graph) -> bool:
    return automorphism_count(g, limit=2) == 1


__all__ = [
    "ORACLE_MAX_VERTICES",
    "automorphism_count",
    "find_isomorphism",
    "is_rigid",
]
