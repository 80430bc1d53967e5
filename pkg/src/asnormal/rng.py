"""SplitMix64, so random curves can be regenerated from a seed anywhere."""

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """next() mod n (the modulo bias is negligible for n <= 2^20)."""
        return self.next() % n


def random_f(q: int, m: int, rng: SplitMix64) -> tuple[int, ...]:
    """Codes of a degree-m polynomial, low to high, leading coefficient nonzero."""
    low = [rng.below(q) for _ in range(m)]
    return tuple(low) + (1 + rng.below(q - 1),)
