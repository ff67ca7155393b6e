"""Seeded, splittable uniform streams.

Every random draw in the package comes from numpy's counter-based Philox4x64
generator.  A *run* is keyed by ``seed + (run << 64)``, so different runs of
the same master seed never share a stream.  Within a run, trial ``i`` that
needs ``width`` draws uses stream positions ``i*width .. i*width + width - 1``;
a single trial can therefore be regenerated without producing the others.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RNG_ALGORITHM = "numpy-Philox4x64-10"
DEFAULT_SEED = 20131126
MAX_SEED = 2**64 - 1

# draws per Philox counter increment
_BLOCK = 4


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def run_key(seed: int, run: int = 0) -> int:
    if run < 0:
        raise ValueError("run index must be non-negative")
    return check_seed(seed) + (int(run) << 64)


def generator(seed: int, run: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=run_key(seed, run)))


@dataclass(frozen=True)
class TrialSeed:
    seed: int
    index: int
    run: int = 0

    def generator(self, width: int) -> np.random.Generator:
        """Generator positioned at the first draw of this trial."""
        if self.index < 0 or width < 0:
            raise ValueError("trial index and width must be non-negative")
        bitgen = np.random.Philox(key=run_key(self.seed, self.run))
        start = self.index * width
        bitgen.advance(start // _BLOCK)
        gen = np.random.Generator(bitgen)
        skip = start % _BLOCK
        if skip:
            gen.random(skip)
        return gen

    def uniforms(self, width: int) -> np.ndarray:
        return self.generator(width).random(width)


def uniform_block(seed: int, trials: int, width: int, run: int = 0) -> np.ndarray:
    """Uniforms in [0, 1) of shape (trials, width); row i belongs to trial i."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return generator(seed, run).random((trials, width))
