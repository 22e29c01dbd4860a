"""三种比特承诺方案的 commit / open / verify。

承诺 = (方案, 公开参数, 见证)；打开 = (承诺的值, 随机性)。
verify 是纯函数，失败时给出未通过的谓词名称。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..common.codec import PayloadReader, decode_ints, encode_int, encode_ints, encode_u16
from ..common.exceptions import ParameterError, PayloadError
from ..common.rng import RandomStream
from ..graphs import Graph, Permutation, apply_perm, decode_graph, decode_perm, random_perm
from ..numtheory import (
    BlumModulus,
    FieldContext,
    is_generator,
    is_probable_prime,
    jacobi,
    legendre,
    sample_unit,
)

QRP = "qrp"
DLP = "dlp"
GRAPH = "graph"
SCHEMES = (QRP, DLP, GRAPH)


# region 数据类型
@dataclass(frozen=True, slots=True)
class Commitment:
    scheme: str
    public_params: bytes
    witness: bytes


@dataclass(frozen=True, slots=True)
class Opening:
    committed_value: int
    randomness: bytes

    def encode(self) -> bytes:
        return encode_int(self.committed_value) + encode_u16(len(self.randomness)) + self.randomness

    @classmethod
    def decode(cls, payload: bytes) -> Opening:
        reader = PayloadReader(payload)
        value = reader.read_int()
        randomness = reader.read_bytes(reader.read_u16())
        reader.finish()
        return cls(value, randomness)


@dataclass(frozen=True, slots=True)
class Committed:
    """承诺方持有的状态：公开的承诺与留待打开的数据。"""

    commitment: Commitment
    opening: Opening


@dataclass(frozen=True, slots=True)
class VerifyResult:
    accepted: bool
    failed_predicate: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


ACCEPT = VerifyResult(True)


def _reject(predicate: str) -> VerifyResult:
    return VerifyResult(False, predicate)


def _check_bit(b: int) -> None:
    if b not in (0, 1):
        raise ParameterError(f"承诺的比特必须是 0 或 1: {b}")


# endregion


# region QRP
@dataclass(frozen=True, slots=True)
class QrpParams:
    modulus: BlumModulus
    y: int

    def __post_init__(self) -> None:
        n = self.modulus.modulus
        if legendre(self.y, self.modulus.p) != -1 or legendre(self.y, self.modulus.q) != -1:
            raise ParameterError(f"y={self.y} 不是 Jacobi 符号为 1 的非剩余 (N={n})")

    def encode(self) -> bytes:
        return encode_ints(self.modulus.modulus, self.y)


def qrp_witness(b: int, r: int, y: int, n: int) -> int:
    return r * r * pow(y, b, n) % n


def qrp_commit(b: int, params: QrpParams, rng: RandomStream) -> Committed:
    _check_bit(b)
    n = params.modulus.modulus
    r = sample_unit(n, rng)
    commitment = Commitment(QRP, params.encode(), encode_int(qrp_witness(b, r, params.y, n)))
    opening = Opening(b, encode_ints(r, params.modulus.p, params.modulus.q))
    return Committed(commitment, opening)


def qrp_open(committed: Committed) -> Opening:
    return committed.opening


def qrp_check_opening(
    b: int, r: int, y: int, n: int, c: int
) -> VerifyResult:
    """不依赖 p, q 的部分：b ∈ {0,1}、r ∈ Z_N*、c ≡ r²·y^b。"""
    if b not in (0, 1):
        return _reject("b ∈ {0,1}")
    if not 0 < r < n or math.gcd(r, n) != 1:
        return _reject("r ∈ Z_N*")
    if qrp_witness(b, r, y, n) != c:
        return _reject("c ≡ r²·y^b")
    return ACCEPT


def qrp_verify(commitment: Commitment, opening: Opening) -> VerifyResult:
    try:
        n, y = decode_ints(commitment.public_params, 2)
        (c,) = decode_ints(commitment.witness, 1)
        r, p, q = decode_ints(opening.randomness, 3)
    except PayloadError:
        return _reject("编码格式")
    if p * q != n or p in (0, 1) or q in (0, 1):
        return _reject("p·q = N")
    if p == q or not (is_probable_prime(p) and is_probable_prime(q)) or p % 2 == 0 or q % 2 == 0:
        return _reject("p, q 为不同奇素数")
    if n < 3 or jacobi(y, n) != 1:
        return _reject("jacobi(y, N) = 1")
    if legendre(y, p) != -1 or legendre(y, q) != -1:
        return _reject("y 为非剩余")
    return qrp_check_opening(opening.committed_value, r, y, n, c)


class QrpCommitter:
    """一次性承诺方：打开时公开 p, q，模数随即作废。"""

    def __init__(self, params: QrpParams):
        self.params = params
        self._committed: Committed | None = None
        self._burned = False

    @property
    def burned(self) -> bool:
        return self._burned

    def commit(self, b: int, rng: RandomStream) -> Commitment:
        if self._committed is not None or self._burned:
            raise ParameterError("该 (N, y) 已用于一次承诺，不能复用")
        self._committed = qrp_commit(b, self.params, rng)
        return self._committed.commitment

    def open(self) -> Opening:
        if self._committed is None:
            raise ParameterError("尚未承诺")
        if self._burned:
            raise ParameterError("承诺已打开过")
        self._burned = True
        return self._committed.opening


# endregion


# region DLP
def dlp_commit(x: int, field: FieldContext) -> Committed:
    if not 1 < x < field.p - 1:
        raise ParameterError(f"x 必须满足 1 < x < p−1: {x}")
    commitment = Commitment(DLP, encode_ints(field.p, field.g), encode_int(field.exp(x)))
    return Committed(commitment, Opening(x, b""))


def dlp_open(committed: Committed) -> Opening:
    return committed.opening


def dlp_verify(commitment: Commitment, opening: Opening) -> VerifyResult:
    try:
        p, g = decode_ints(commitment.public_params, 2)
        (y,) = decode_ints(commitment.witness, 1)
    except PayloadError:
        return _reject("编码格式")
    if opening.randomness:
        return _reject("编码格式")
    if p < 3 or not is_probable_prime(p) or not is_generator(g, p):
        return _reject("g 为生成元")
    x = opening.committed_value
    if not 1 < x < p - 1:
        return _reject("1 < x < p−1")
    if pow(g, x, p) != y:
        return _reject("y ≡ g^x")
    return ACCEPT


# endregion


# region 图
def degree_certificate(g: Graph, h: Graph) -> bool:
    """度序列不同即可多项式时间确认不同构。"""
    return g.n == h.n and g.degree_sequence() != h.degree_sequence()


def graph_commit(b: int, pair: tuple[Graph, Graph], rng: RandomStream) -> Committed:
    _check_bit(b)
    if not degree_certificate(*pair):
        raise ParameterError("图对没有度序列不同构证书")
    sigma = random_perm(pair[0].n, rng)
    commitment = Commitment(
        GRAPH, pair[0].encode() + pair[1].encode(), apply_perm(pair[b], sigma).encode()
    )
    return Committed(commitment, Opening(b, sigma.encode()))


def graph_open(committed: Committed) -> Opening:
    return committed.opening


def graph_verify(commitment: Commitment, opening: Opening) -> VerifyResult:
    try:
        reader = PayloadReader(commitment.public_params)
        pair = (Graph.read(reader), Graph.read(reader))
        reader.finish()
        witness = decode_graph(commitment.witness)
        sigma: Permutation = decode_perm(opening.randomness)
    except PayloadError:
        return _reject("编码格式")
    if not degree_certificate(*pair):
        return _reject("度序列不同构证书")
    b = opening.committed_value
    if b not in (0, 1):
        return _reject("b ∈ {0,1}")
    if sigma.n != pair[b].n or apply_perm(pair[b], sigma) != witness:
        return _reject("置换把所选图映射到见证")
    return ACCEPT


# endregion


# region 通用接口
_VERIFIERS = {QRP: qrp_verify, DLP: dlp_verify, GRAPH: graph_verify}


def verify_commitment(commitment: Commitment, opening: Opening) -> VerifyResult:
    verifier = _VERIFIERS.get(commitment.scheme)
    if verifier is None:
        return _reject("未知方案")
    return verifier(commitment, opening)


# endregion

__all__ = [
    "DLP",
    "GRAPH",
    "QRP",
    "SCHEMES",
    "Commitment",
    "Committed",
    "Opening",
    "QrpCommitter",
    "QrpParams",
    "VerifyResult",
    "degree_certificate",
    "dlp_commit",
    "dlp_open",
    "dlp_verify",
    "graph_commit",
    "graph_open",
    "graph_verify",
    "qrp_check_opening",
    "qrp_commit",
    "qrp_open",
    "qrp_verify",
    "qrp_witness",
    "verify_commitment",
]
