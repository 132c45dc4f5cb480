"""Self-contained deterministic PRNG used for every random choice in the pipeline.

The generator is SplitMix64 (Steele et al.), chosen because its full algorithm
fits in a dozen lines and therefore reproduces bit-for-bit in any language or
ecosystem.  Subsampling and shuffling use Fisher-Yates driven by rejection
sampling, so the sequence of drawn indices is likewise implementation-agnostic.

Every consumer derives its own stream with `derive(seed, purpose)` so stages do
not perturb each other's draws when one of them changes.
"""

from __future__ import annotations

import hashlib

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 stream: next(state) = mix(state += 0x9E3779B97F4A7C15)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow() requires n >= 1")
        limit = _MASK64 - (_MASK64 % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), in draw order."""
        if k > n:
            raise ValueError(f"cannot sample {k} items from {n}")
        idx = list(range(n))
        # partial Fisher-Yates from the front
        for i in range(k):
            j = i + self.randbelow(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]

    def choices_with_replacement(self, n: int, k: int) -> list[int]:
        return [self.randbelow(n) for _ in range(k)]


def derive(seed: int, purpose: str) -> SplitMix64:
    """A SplitMix64 stream unique to (seed, purpose).

    The purpose string is hashed (sha256) together with the seed so distinct
    pipeline stages get statistically independent, individually stable streams.
    """
    digest = hashlib.sha256(f"{seed}:{purpose}".encode("utf-8")).digest()
    return SplitMix64(int.from_bytes(digest[:8], "big"))
