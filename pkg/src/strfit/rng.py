"""Deterministic random-number plumbing.

Every randomized operation in the package draws from an `Rng`, which wraps
numpy's PCG64 bit generator seeded through `SeedSequence`. PCG64 streams are
stable across platforms and numpy releases (>= 1.17), so a fixed seed yields
a bitwise-identical stream everywhere. Child streams are derived from the
parent seed plus a string tag, never by sharing generator state, so
concurrent tasks can hold independent Rng instances.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

ALGORITHM = "numpy-pcg64"


def _tag_to_int(tag: str | int) -> int:
    if isinstance(tag, int):
        return tag
    return zlib.crc32(tag.encode("utf-8"))


@dataclass
class Rng:
    """Seeded random source with deterministic child derivation."""

    seed: int
    algorithm: str = ALGORITHM
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.algorithm != ALGORITHM:
            raise ValueError(f"unsupported rng algorithm: {self.algorithm!r}")
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def child(self, *tags: str | int) -> "Rng":
        """Derive an independent Rng keyed by (seed, tags).

        The derivation hashes tags into the SeedSequence entropy, so children
        with distinct tags have statistically independent streams and the
        same (seed, tags) always reproduces the same stream.
        """
        entropy = [self.seed] + [_tag_to_int(t) for t in tags]
        rng = object.__new__(Rng)
        rng.seed = self.seed
        rng.algorithm = ALGORITHM
        rng._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
        return rng
