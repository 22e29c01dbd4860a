"""无向图、顶点置换与线路编码。

图编码：2 字节 n + ⌈n²/8⌉ 字节行优先邻接位图（numpy.packbits，上三角镜像）。
置换编码：2 字节 n + n 个 2 字节像。
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ..common.codec import PayloadReader, encode_u16
from ..common.exceptions import ParameterError, PayloadError
from ..common.rng import RandomStream

MAX_VERTICES = 0xFFFF
HAMILTONIAN_CYCLE = "hamiltonian_cycle"


# region 图
@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise ParameterError(f"顶点数非法: {self.n}")
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise ParameterError(f"边 ({u}, {v}) 非法（需 u < v < n，无自环）")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ParameterError(f"不允许自环: {u}")
            normalized.add((min(u, v), max(u, v)))
        return cls(n, frozenset(normalized))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, frozenset())

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    def adjacency(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            matrix[u, v] = matrix[v, u] = 1
        return matrix

    def encode(self) -> bytes:
        bitmap = np.packbits(self.adjacency().reshape(-1))
        return encode_u16(self.n) + bitmap.tobytes()

    @classmethod
    def read(cls, reader: PayloadReader) -> Graph:
        n = reader.read_u16()
        if n < 1:
            raise PayloadError("图顶点数为 0")
        raw = reader.read_bytes((n * n + 7) // 8)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
        if bits[n * n :].any():
            raise PayloadError("邻接位图填充位非零")
        matrix = bits[: n * n].reshape(n, n)
        if matrix.diagonal().any():
            raise PayloadError("邻接位图含自环")
        if not np.array_equal(matrix, matrix.T):
            raise PayloadError("邻接位图不对称")
        rows, cols = np.nonzero(np.triu(matrix, k=1))
        return cls(n, frozenset(zip(rows.tolist(), cols.tolist(), strict=True)))


def decode_graph(payload: bytes) -> Graph:
    reader = PayloadReader(payload)
    graph = Graph.read(reader)
    reader.finish()
    return graph


# endregion


# region 置换
@dataclass(frozen=True, slots=True)
class Permutation:
    """mapping[v] 为顶点 v 的像。"""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ParameterError(f"不是双射: {self.mapping}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.mapping))

    def encode(self) -> bytes:
        return encode_u16(self.n) + b"".join(encode_u16(v) for v in self.mapping)

    @classmethod
    def read(cls, reader: PayloadReader) -> Permutation:
        n = reader.read_u16()
        images = tuple(reader.read_u16() for _ in range(n))
        try:
            return cls(images)
        except ParameterError as exc:
            raise PayloadError(str(exc)) from exc


def decode_perm(payload: bytes) -> Permutation:
    reader = PayloadReader(payload)
    perm = Permutation.read(reader)
    reader.finish()
    return perm


def _check_same_size(a: int, b: int) -> None:
    if a != b:
        raise ParameterError(f"规模不一致: {a} != {b}")


def apply_perm(g: Graph, perm: Permutation) -> Graph:
    _check_same_size(g.n, perm.n)
    return Graph.from_edges(g.n, ((perm(u), perm(v)) for u, v in g.edges))


def compose(pi: Permutation, sigma: Permutation) -> Permutation:
    """(π∘σ)(v) = π(σ(v))。"""
    _check_same_size(pi.n, sigma.n)
    return Permutation(tuple(pi(sigma(v)) for v in range(pi.n)))


def invert(perm: Permutation) -> Permutation:
    inverse = [0] * perm.n
    for v, image in enumerate(perm.mapping):
        inverse[image] = v
    return Permutation(tuple(inverse))


def random_perm(n: int, rng: RandomStream) -> Permutation:
    if n < 1:
        raise ParameterError(f"置换规模必须 ≥ 1: {n}")
    items = list(range(n))
    rng.shuffle(items)
    return Permutation(tuple(items))


def perm_rank(perm: Permutation) -> int:
    """Lehmer 码排名，取值 [0, n!)。"""
    remaining = list(range(perm.n))
    rank = 0
    for i, image in enumerate(perm.mapping):
        index = remaining.index(image)
        rank += index * math.factorial(perm.n - 1 - i)
        remaining.pop(index)
    return rank


def perm_unrank(rank: int, n: int) -> Permutation:
    if not 0 <= rank < math.factorial(n):
        raise ParameterError(f"排名 {rank} 超出 [0, {n}!)")
    remaining = list(range(n))
    images = []
    for i in range(n):
        index, rank = divmod(rank, math.factorial(n - 1 - i))
        images.append(remaining.pop(index))
    return Permutation(tuple(images))


def perm_rank_bits(n: int) -> int:
    return max(1, (math.factorial(n) - 1).bit_length())


# endregion


# region 哈密顿回路
def normalize_cycle(witness: Sequence[int]) -> tuple[int, ...]:
    """旋转到从 0 开始，并令第二个顶点小于最后一个顶点。"""
    seq = list(witness)
    if not seq or 0 not in seq:
        return tuple(seq)
    start = seq.index(0)
    seq = seq[start:] + seq[:start]
    if len(seq) > 2 and seq[1] > seq[-1]:
        seq = [seq[0], *reversed(seq[1:])]
    return tuple(seq)


def validate_cycle(graph: Graph, witness: Sequence[int]) -> bool:
    if graph.n < 3 or len(witness) != graph.n:
        return False
    if sorted(witness) != list(range(graph.n)):
        return False
    return all(
        graph.has_edge(witness[i], witness[(i + 1) % graph.n])
        for i in range(graph.n)
    )


@dataclass(frozen=True, slots=True)
class PlantedSolution:
    graph: Graph
    kind: str
    witness: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind != HAMILTONIAN_CYCLE:
            raise ParameterError(f"不支持的问题类型: {self.kind}")
        if not validate_cycle(self.graph, self.witness):
            raise ParameterError("见证不是图中的哈密顿回路")


def permute_solution(solution: PlantedSolution, perm: Permutation) -> PlantedSolution:
    return PlantedSolution(
        apply_perm(solution.graph, perm),
        solution.kind,
        normalize_cycle(tuple(perm(v) for v in solution.witness)),
    )


def encode_vertex_sequence(seq: Sequence[int]) -> bytes:
    return encode_u16(len(seq)) + b"".join(encode_u16(v) for v in seq)


def read_vertex_sequence(reader: PayloadReader) -> tuple[int, ...]:
    count = reader.read_u16()
    return tuple(reader.read_u16() for _ in range(count))


# endregion

__all__ = [
    "HAMILTONIAN_CYCLE",
    "Graph",
    "Permutation",
    "PlantedSolution",
    "apply_perm",
    "compose",
    "decode_graph",
    "decode_perm",
    "encode_vertex_sequence",
    "invert",
    "normalize_cycle",
    "perm_rank",
    "perm_rank_bits",
    "perm_unrank",
    "permute_solution",
    "random_perm",
    "read_vertex_sequence",
    "validate_cycle",
]
