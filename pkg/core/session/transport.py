"""可插拔传输层。两种实现传输完全相同的帧字节。"""

from __future__ import annotations

import socket
from collections import deque
from typing import Protocol

from ..common.exceptions import ParameterError, PayloadError
from .errors import ROLE_A, ROLE_B
from .message import HEADER_SIZE, decode_header

TRANSPORTS = ("inproc", "loopback")


def peer_of(role: str) -> str:
    return ROLE_B if role == ROLE_A else ROLE_A


class Transport(Protocol):
    def send(self, src: str, frame: bytes) -> None: ...

    def pending(self, dst: str) -> int: ...

    def recv(self, dst: str) -> bytes: ...

    def close(self) -> None: ...


# region 进程内队列
class InProcTransport:
    def __init__(self) -> None:
        self._queues: dict[str, deque[bytes]] = {ROLE_A: deque(), ROLE_B: deque()}

    def send(self, src: str, frame: bytes) -> None:
        self._queues[peer_of(src)].append(bytes(frame))

    def pending(self, dst: str) -> int:
        return len(self._queues[dst])

    def recv(self, dst: str) -> bytes:
        return self._queues[dst].popleft()

    def close(self) -> None:
        for queue in self._queues.values():
            queue.clear()

    def __enter__(self) -> InProcTransport:
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


# endregion


# region 本地套接字对
_CHUNK = 1 << 16


class LoopbackTransport:
    """socketpair 字节流；按帧头长度读取完整帧。

    套接字为非阻塞：发送方每写一块就把对端套接字读空到接收缓冲，
    帧再大也不会卡在内核缓冲区上。
    """

    def __init__(self) -> None:
        sock_a, sock_b = socket.socketpair()
        self._socks = {ROLE_A: sock_a, ROLE_B: sock_b}
        for sock in self._socks.values():
            sock.setblocking(False)
        self._buffers = {ROLE_A: bytearray(), ROLE_B: bytearray()}
        self._in_flight = {ROLE_A: 0, ROLE_B: 0}

    def _drain(self, dst: str) -> None:
        sock, buffer = self._socks[dst], self._buffers[dst]
        while True:
            try:
                chunk = sock.recv(_CHUNK)
            except BlockingIOError:
                return
            if not chunk:
                return
            buffer.extend(chunk)

    def send(self, src: str, frame: bytes) -> None:
        dst = peer_of(src)
        sock = self._socks[src]
        view = memoryview(frame)
        while view:
            try:
                sent = sock.send(view[:_CHUNK])
            except BlockingIOError:
                sent = 0
            view = view[sent:]
            self._drain(dst)
        self._in_flight[dst] += 1

    def pending(self, dst: str) -> int:
        return self._in_flight[dst]

    def recv(self, dst: str) -> bytes:
        self._drain(dst)
        buffer = self._buffers[dst]
        _, size = decode_header(bytes(buffer[:HEADER_SIZE]))
        end = HEADER_SIZE + size
        if len(buffer) < end:
            raise PayloadError(f"帧截断: 需要 {end} 字节，只有 {len(buffer)}")
        frame = bytes(buffer[:end])
        del buffer[:end]
        self._in_flight[dst] -= 1
        return frame

    def close(self) -> None:
        for sock in self._socks.values():
            sock.close()
        for buffer in self._buffers.values():
            buffer.clear()

    def __enter__(self) -> LoopbackTransport:
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


# endregion


def open_transport(name: str) -> InProcTransport | LoopbackTransport:
    if name == "inproc":
        return InProcTransport()
    if name == "loopback":
        return LoopbackTransport()
    raise ParameterError(f"未知传输方式: {name}（可选 {', '.join(TRANSPORTS)}）")


__all__ = [
    "TRANSPORTS",
    "InProcTransport",
    "LoopbackTransport",
    "Transport",
    "open_transport",
    "peer_of",
]
