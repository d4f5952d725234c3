"""SplitMix64 counter generator shared by both kernel backends.

The n-th output of a stream with seed ``x`` is ``mix64(x + n * GAMMA)``
(n = 1, 2, ...), so a stream is fully described by its 64-bit seed.  The
compiled kernels implement the same arithmetic, which makes the two
backends produce bit-identical runs.

Per-run streams are derived from ``(base_seed, run_index)`` by
:func:`derive_seed`.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_RUN_SALT = 0xD1B54A32D192ED03
_2POW53_INV = 1.0 / 9007199254740992.0


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, run_index: int) -> int:
    """Seed of run ``run_index`` under ``base_seed`` (both unsigned 64-bit)."""
    if not 0 <= base_seed <= MASK64:
        raise ValueError(f"base_seed must be an unsigned 64-bit integer, got {base_seed}")
    if run_index < 0:
        raise ValueError("run_index must be non-negative")
    return mix64(mix64(base_seed ^ _RUN_SALT) + (run_index + 1) * GAMMA)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` (Lemire's multiply-and-reject)."""
        m = self.next_u64() * n
        low = m & MASK64
        if low < n:
            threshold = ((1 << 64) - n) % n
            while low < threshold:
                m = self.next_u64() * n
                low = m & MASK64
        return m >> 64

    def uniform(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * _2POW53_INV
