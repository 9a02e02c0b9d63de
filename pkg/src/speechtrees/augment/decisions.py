"""Sources of random draws for the augmentation passes.

Every random choice is decoded from a single uniform draw in ``[0, 1)``, so a
scripted source is just a list of floats. Seeded sources derive an
independent stream per (seed, epoch, index) triple; the derivation does not
depend on how many streams were opened before, which is what lets trees be
augmented on separate workers without changing the result.
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence

_MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """SplitMix64 finaliser: a 64-bit avalanche mix."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_seed(seed: int, epoch: int, index: int) -> int:
    z = mix64(seed & _MASK64)
    z = mix64(z ^ (epoch & _MASK64))
    return mix64(z ^ (index & _MASK64))


class ScriptExhausted(RuntimeError):
    """A scripted decision source ran out of draws."""


class DecisionSource:
    """Base class; subclasses supply :meth:`random`."""

    def random(self) -> float:
        raise NotImplementedError

    def chance(self, p: float) -> bool:
        return self.random() < p

    def categorical(self, dist: Mapping):
        """Pick a key of ``dist`` by cumulative weight, in the mapping's order."""
        u = self.random()
        total = 0.0
        key = None
        for key, weight in dist.items():
            total += weight
            if u < total:
                return key
        # weights summing to 1 - eps: the gap goes to the last category
        return key

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        u = self.random()
        return min(hi, lo + int(u * (hi - lo + 1)))

    def index(self, n: int) -> int:
        return self.integer(0, n - 1)


class SeededDecisions(DecisionSource):
    def __init__(self, seed: int, epoch: int = 0, index: int = 0):
        self.seed = seed
        self.epoch = epoch
        self.stream_index = index
        self._rng = random.Random(stream_seed(seed, epoch, index))

    def random(self) -> float:
        return self._rng.random()

    def __repr__(self):
        return f"SeededDecisions(seed={self.seed}, epoch={self.epoch}, index={self.stream_index})"


class ScriptedDecisions(DecisionSource):
    """Replays a fixed list of uniform draws; running out is an error."""

    def __init__(self, draws: Iterable[float]):
        self.draws: Sequence[float] = list(draws)
        self.position = 0
        for u in self.draws:
            if not 0.0 <= u < 1.0:
                raise ValueError(f"scripted draw {u!r} is outside [0, 1)")

    def random(self) -> float:
        if self.position >= len(self.draws):
            raise ScriptExhausted(f"script of {len(self.draws)} draws exhausted")
        u = self.draws[self.position]
        self.position += 1
        return u

    @property
    def remaining(self) -> int:
        return len(self.draws) - self.position
