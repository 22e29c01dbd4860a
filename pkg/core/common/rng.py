"""可注入的随机流。

所有协议方只从自己的 RandomStream 取随机数；同一种子产生同一序列，
会话记录因此可以逐字节复现。
"""

from __future__ import annotations

import hashlib
import random
from collections.abc import MutableSequence, Sequence
from typing import Any, TypeVar

T = TypeVar("T")

SEED_BITS = 64


class RandomStream:
    __slots__ = ("seed", "_random")

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._random = random.Random(self.seed)

    @classmethod
    def derive(cls, seed: int, label: str) -> RandomStream:
        """从 (seed, label) 派生独立子流，用于输入准备等与会话随机性分离的场合。"""
        return cls(derive_seed(seed, label))

    def bit(self) -> int:
        return self._random.getrandbits(1)

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        return self._random.getrandbits(k)

    def randbelow(self, n: int) -> int:
        return self._random.randrange(n)

    def randrange(self, start: int, stop: int) -> int:
        return self._random.randrange(start, stop)

    def random(self) -> float:
        return self._random.random()

    def choice(self, items: Sequence[T]) -> T:
        return items[self._random.randrange(len(items))]

    def shuffle(self, items: MutableSequence[Any]) -> None:
        # random.shuffle 即 Fisher–Yates
        self._random.shuffle(items)

    def getstate(self) -> object:
        return self._random.getstate()

    def setstate(self, state: object) -> None:
        self._random.setstate(state)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed})"


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.blake2b(
        int(seed).to_bytes(16, "big", signed=True),
        key=label.encode("utf-8")[:64],
        digest_size=SEED_BITS // 8,
    ).digest()
    return int.from_bytes(digest, "big")


__all__ = ["RandomStream", "SEED_BITS", "derive_seed"]
