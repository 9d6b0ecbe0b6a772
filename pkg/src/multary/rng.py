"""Fixed 64-bit PRNG used by every seeded generator and search.

The generator is splitmix64.  Its update rule, written out so that the
stream can be reproduced in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z XOR (z >> 31)

Bounded draws use the multiply-shift reduction `(raw * n) >> 64`, and
shuffles are descending Fisher-Yates.  All seeded corpora in the test
suite depend on these exact choices; do not change them casually.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator with splitmix64 update rule."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) by multiply-shift reduction."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next64() * n) >> 64

    def shuffle(self, items: list) -> list:
        """In-place descending Fisher-Yates shuffle; returns the list."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def permutation(self, n: int) -> tuple[int, ...]:
        return tuple(self.shuffle(list(range(n))))
