"""Seedable randomness.

A seeded :class:`ShakeRandom` expands the seed with SHAKE256 in counter mode,
so seeded runs are reproducible across platforms. Without a seed we fall back
to :class:`random.SystemRandom` (OS entropy).
"""

from __future__ import annotations

import hashlib
import random

_BLOCK = 1024


class ShakeRandom(random.Random):
    """Deterministic ``random.Random`` backed by a SHAKE256 keystream."""

    def __init__(self, seed: bytes | int | str = b"") -> None:
        self._key = b""
        self._counter = 0
        self._buf = b""
        super().__init__(seed)

    def seed(self, a=b"", version=2) -> None:  # noqa: D102
        if isinstance(a, int):
            a = a.to_bytes(max(1, (a.bit_length() + 7) // 8), "big")
        elif isinstance(a, str):
            a = a.encode()
        elif a is None:
            a = b""
        self._key = hashlib.sha3_256(b"codebreak-rng" + bytes(a)).digest()
        self._counter = 0
        self._buf = b""

    def randbytes(self, n: int) -> bytes:
        while len(self._buf) < n:
            block = hashlib.shake_256(
                self._key + self._counter.to_bytes(8, "big")
            ).digest(_BLOCK)
            self._counter += 1
            self._buf += block
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def getrandbits(self, k: int) -> int:
        if k < 0:
            raise ValueError("number of bits must be non-negative")
        if k == 0:
            return 0
        x = int.from_bytes(self.randbytes((k + 7) // 8), "little")
        return x & ((1 << k) - 1)

    def random(self) -> float:
        return self.getrandbits(53) / (1 << 53)

    def getstate(self):
        return (self._key, self._counter, self._buf)

    def setstate(self, state) -> None:
        self._key, self._counter, self._buf = state


def make_rng(seed: bytes | int | str | None = None) -> random.Random:
    """Return a deterministic generator for ``seed``, or OS entropy if None."""
    if seed is None:
        return random.SystemRandom()
    return ShakeRandom(seed)
