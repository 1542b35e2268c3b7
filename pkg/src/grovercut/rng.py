"""Seeded random number generation.

Every stochastic routine in this package draws from numpy's Philox bit
generator, a counter-based generator with a published specification whose
streams are reproducible bit-for-bit across platforms and numpy releases.
Independent sub-streams are derived from ``(seed, *stream)`` tuples through
``numpy.random.SeedSequence``, so parallel work (per part, per trial, per
round) never shares or races a generator.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox generator for ``seed``, optionally forked by stream tags."""
    entropy = [int(seed) & _MASK64] + [int(s) & _MASK64 for s in stream]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *stream: int) -> int:
    """Deterministic 63-bit sub-seed for handing to APIs that take one seed."""
    return int(make_rng(seed, *stream).integers(0, 1 << 63))
