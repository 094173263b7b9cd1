"""Deterministic random streams shared by every training and splitting routine.

All randomness goes through :class:`SeededRng`, a thin wrapper around the
Philox 4x64 counter-based bit generator. Derived draws (uniforms, bounded
integers, shuffles, subset sampling, normals) are implemented here on top of
the raw 64-bit stream, so the produced sequences depend only on (seed, stream)
and never on library-internal sampling algorithms.
"""

from __future__ import annotations

import numpy as np

_U64_BITS = 64
_DOUBLE_SCALE = 1.0 / (1 << 53)


class SeededRng:
    """Counter-based random stream keyed by (seed, stream).

    Equal keys yield equal draw sequences on every platform and run. Substreams
    are statistically independent, which lets parallel consumers (ensemble
    members, fold shuffles) draw without coordination.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= int(seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if not 0 <= int(stream) < 2**64:
            raise ValueError("stream must fit in 64 bits")
        self.seed = int(seed)
        self.stream = int(stream)
        self._bits = np.random.Philox(key=np.array([self.seed, self.stream], dtype=np.uint64))

    def substream(self, stream: int) -> "SeededRng":
        """Independent stream under the same seed."""
        return SeededRng(self.seed, stream)

    def raw(self, n: int) -> np.ndarray:
        """Next n raw uint64 words from the Philox stream."""
        return self._bits.random_raw(n)

    def random(self, n: int) -> np.ndarray:
        """n doubles uniform on [0, 1), from the top 53 bits of each word."""
        return (self.raw(n) >> (_U64_BITS - 53)) * _DOUBLE_SCALE

    def integer_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection on the raw stream."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        # Reject the tail that would bias the modulus.
        limit = (2**64 // bound) * bound
        while True:
            word = int(self.raw(1)[0])
            if word < limit:
                return word % bound

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates permutation of range(n)."""
        out = np.arange(n)
        for i in range(n - 1, 0, -1):
            j = self.integer_below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def subset(self, n: int, k: int) -> np.ndarray:
        """k distinct indices from range(n), returned sorted.

        Partial Fisher-Yates; sorting keeps downstream column slices in
        canonical order without changing which subset was drawn.
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} distinct indices from {n}")
        pool = np.arange(n)
        for i in range(k):
            j = i + self.integer_below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        picked = pool[:k]
        picked.sort()
        return picked

    def normals(self, shape) -> np.ndarray:
        """Standard normals via Box-Muller on stream uniforms."""
        count = int(np.prod(shape))
        pairs = (count + 1) // 2
        # Box-Muller needs u1 > 0.
        u1 = 1.0 - self.random(pairs)
        u2 = self.random(pairs)
        radius = np.sqrt(-2.0 * np.log(u1))
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(2.0 * np.pi * u2)
        z[1::2] = radius * np.sin(2.0 * np.pi * u2)
        return z[:count].reshape(shape)
