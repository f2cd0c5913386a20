"""Seeded, splittable random streams (Philox counter-based generators)."""

import numpy as np


class Rng:
    def __init__(self, seed, _seq: np.random.SeedSequence | None = None):
        self.seq = _seq if _seq is not None else np.random.SeedSequence(seed)
        self.gen = np.random.Generator(np.random.Philox(self.seq))

    def split(self, n: int) -> list["Rng"]:
        """n statistically independent child streams."""
        return [Rng(None, _seq=s) for s in self.seq.spawn(n)]

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.gen.uniform(low, high, size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self.gen.normal(loc, scale, size)

    def integers(self, low, high=None, size=None):
        return self.gen.integers(low, high, size)

    def permutation(self, n):
        return self.gen.permutation(n)
