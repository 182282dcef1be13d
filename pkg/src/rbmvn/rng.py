"""Deterministic random-number substreams.

Replicated Monte Carlo needs many mutually independent generators whose
output depends only on a user-visible seed and a stream index, never on
scheduling order.  A counter-based bit generator (Philox) gives exactly
that: the (seed, stream) pair is the 128-bit key, so creating a substream
is O(1) and two distinct pairs never share state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """A named substream of the global experiment randomness.

    Parameters
    ----------
    seed : int
        User-visible seed shared by the whole experiment.
    stream : int
        Index of this substream.  Each logical consumer (one replication,
        one pool, one dataset) owns exactly one stream.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this substream."""
        key = np.array([self.seed & _MASK64, self.stream & _MASK64],
                       dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, offset: int) -> "RngStream":
        """Stream with the same seed and a shifted stream index."""
        return RngStream(self.seed, self.stream + offset)


def mix_seed(seed: int, salt: int) -> int:
    """Derive a decorrelated 63-bit seed from (seed, salt).

    Used when a sub-experiment (e.g. one replication of a power study)
    needs a whole seed of its own rather than a single substream.
    splitmix64 finalizer; cheap and stateless.
    """
    # offset keeps (0, 0) away from the finalizer's zero fixed point
    z = (seed * 0x9E3779B97F4A7C15 + salt * 0xBF58476D1CE4E5B9
         + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return z & ((1 << 63) - 1)
