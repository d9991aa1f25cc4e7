"""SplitMix64, written out in integer arithmetic so suites replay bit-exactly anywhere.

State update::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64

Output mix of the updated state ``s``::

    s = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    s = (s ^ (s >> 27)) * 0x94D049BB133111EB mod 2**64
    out = s ^ (s >> 31)

A closed-unit draw is ``(out >> 11) / (2**53 - 1)``.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        s = self.state
        s = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        s = ((s ^ (s >> 27)) * 0x94D049BB133111EB) & MASK64
        return s ^ (s >> 31)

    def next_closed_unit(self) -> float:
        """Uniform double in [0, 1], both ends attainable."""
        return (self.next_u64() >> 11) / float((1 << 53) - 1)
