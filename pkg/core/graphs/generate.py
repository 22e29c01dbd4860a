"""随机图与带植入解的图。"""

from __future__ import annotations

from collections.abc import Sequence

from ..common.exceptions import ParameterError
from ..common.log import logger
from ..common.rng import RandomStream
from .graph import (
    HAMILTONIAN_CYCLE,
    Graph,
    PlantedSolution,
    normalize_cycle,
    permute_solution,
    random_perm,
)
from .oracle import is_rigid

RIGID_CHECK_MAX_VERTICES = 10
# 2..5 个顶点不存在非平凡的非对称图
_NO_RIGID_SIZES = range(2, 6)
_MAX_SAMPLES = 10_000


def random_graph(n: int, edge_prob: float, rng: RandomStream) -> Graph:
    if not 0.0 <= edge_prob <= 1.0:
        raise ParameterError(f"边概率必须在 [0, 1]: {edge_prob}")
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob
    ]
    return Graph(n, frozenset(edges))


def random_rigid_graph(
    n: int, rng: RandomStream, edge_prob: float = 0.5
) -> Graph:
    """自同构群平凡的随机图；n > 10 时不再校验刚性。"""
    if n in _NO_RIGID_SIZES:
        raise ParameterError(f"{n} 个顶点上不存在刚性图")
    if n > RIGID_CHECK_MAX_VERTICES:
        return random_graph(n, edge_prob, rng)
    for attempt in range(1, _MAX_SAMPLES + 1):
        graph = random_graph(n, edge_prob, rng)
        if is_rigid(graph):
            logger.debug("🎲 刚性图采样: n=%d, 尝试 %d 次", n, attempt)
            return graph
    raise ParameterError(f"{_MAX_SAMPLES} 次采样内未找到 {n} 顶点刚性图")


def gen_noniso_pair(n: int, rng: RandomStream) -> tuple[Graph, Graph]:
    """度序列不同的两个图，验证方无需搜索即可确认不同构。"""
    if n < 3:
        raise ParameterError(f"非同构图对要求 n ≥ 3: {n}")
    while True:
        g = random_graph(n, 0.5, rng)
        h = random_graph(n, 0.5, rng)
        if g.degree_sequence() != h.degree_sequence():
            return g, h


def gen_hamiltonian_graph(
    n: int, noise_edges: int, rng: RandomStream
) -> PlantedSolution:
    if n < 3:
        raise ParameterError(f"哈密顿回路要求 n ≥ 3: {n}")
    order = list(random_perm(n, rng).mapping)
    cycle = {
        (min(order[i], order[(i + 1) % n]), max(order[i], order[(i + 1) % n]))
        for i in range(n)
    }
    free = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in cycle
    ]
    rng.shuffle(free)
    edges = cycle | set(free[: max(0, noise_edges)])
    return PlantedSolution(
        Graph(n, frozenset(edges)), HAMILTONIAN_CYCLE, normalize_cycle(order)
    )


def _cycle_edges(witness: tuple[int, ...]) -> set[tuple[int, int]]:
    n = len(witness)
    return {
        (min(witness[i], witness[(i + 1) % n]), max(witness[i], witness[(i + 1) % n]))
        for i in range(n)
    }


def _rewire_to_degrees(
    edges: set[tuple[int, int]],
    cycle: set[tuple[int, int]],
    want: list[int],
    rng: RandomStream,
) -> bool:
    """把噪声边 (a,b) 改接为 (a,c)，b 度数过高、c 度数不足；回路边不动。"""
    n = len(want)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for _ in range(4 * n * n):
        surplus = [v for v in range(n) if deg[v] > want[v]]
        if not surplus:
            return True
        deficit = [v for v in range(n) if deg[v] < want[v]]
        b, c = rng.choice(surplus), rng.choice(deficit)
        movable = [
            a
            for a in range(n)
            if a not in (b, c)
            and (min(a, b), max(a, b)) in edges
            and (min(a, b), max(a, b)) not in cycle
            and (min(a, c), max(a, c)) not in edges
        ]
        if not movable:
            continue
        a = rng.choice(movable)
        edges.discard((min(a, b), max(a, b)))
        edges.add((min(a, c), max(a, c)))
        deg[b] -= 1
        deg[c] += 1
    return False


def gen_hamiltonian_with_degrees(
    degrees: Sequence[int], rng: RandomStream, attempts: int = 64
) -> PlantedSolution:
    """度序列（排序后）与给定序列相同的植入回路图。

    流程：
    1. 植入随机回路并补足同样数量的噪声边；
    2. 按当前度数排序，把目标度序列依次分给各顶点；
    3. 改接噪声边直到每个顶点达到目标度数，失败则重新采样。
    """
    n = len(degrees)
    target = sorted(degrees)
    total = sum(target)
    if n < 3 or target[0] < 2 or target[-1] > n - 1 or total % 2:
        raise ParameterError(f"度序列无法容纳哈密顿回路: {tuple(target)}")
    noise = total // 2 - n
    for attempt in range(1, attempts + 1):
        base = gen_hamiltonian_graph(n, noise, rng)
        edges = set(base.graph.edges)
        current = base.graph.degrees()
        order = sorted(range(n), key=lambda v: (current[v], rng.random()))
        want = [0] * n
        for v, d in zip(order, target, strict=True):
            want[v] = d
        if _rewire_to_degrees(edges, _cycle_edges(base.witness), want, rng):
            logger.debug("🎲 按度序列植入回路图: n=%d, 尝试 %d 次", n, attempt)
            return PlantedSolution(Graph(n, frozenset(edges)), HAMILTONIAN_CYCLE, base.witness)
    raise ParameterError(f"{attempts} 次采样内未能实现度序列 {tuple(target)}")


def gen_twin_hamiltonian(
    solution: PlantedSolution, rng: RandomStream, swaps: int | None = None
) -> PlantedSolution:
    """顶点数、边数、度序列都相同的另一个植入回路图。

    对回路之外的噪声边做双边交换 (a,b),(c,d) → (a,d),(c,b)，度序列不变；
    找不到可交换的边时退化为重新标号的副本。
    """
    graph = solution.graph
    n = graph.n
    witness = solution.witness
    cycle = _cycle_edges(witness)
    edges = set(graph.edges)
    noise = sorted(edges - cycle)
    budget = swaps if swaps is not None else 4 * max(1, len(noise))
    for _ in range(budget):
        if len(noise) < 2:
            break
        (a, b), (c, d) = noise[rng.randbelow(len(noise))], noise[rng.randbelow(len(noise))]
        if len({a, b, c, d}) < 4:
            continue
        if rng.bit():
            c, d = d, c
        new1, new2 = (min(a, d), max(a, d)), (min(c, b), max(c, b))
        if new1 in edges or new2 in edges:
            continue
        edges -= {(a, b) if a < b else (b, a), (c, d) if c < d else (d, c)}
        edges |= {new1, new2}
        noise = sorted(edges - cycle)
    twin = PlantedSolution(Graph(n, frozenset(edges)), solution.kind, witness)
    return permute_solution(twin, random_perm(n, rng))


__all__ = [
    "RIGID_CHECK_MAX_VERTICES",
    "gen_hamiltonian_graph",
    "gen_hamiltonian_with_degrees",
    "gen_noniso_pair",
    "gen_twin_hamiltonian",
    "random_graph",
    "random_rigid_graph",
]
