"""Deterministic random streams.

Every stream is a Philox4x64-10 counter-based generator keyed by a NumPy
``SeedSequence``. Child streams come from spawn keys, so stream ``e`` of seed
``s`` is the same whether it is produced serially or on a worker thread.
Uniforms are formed directly from the raw 64-bit outputs, whose sequence
NumPy keeps stable across releases.
"""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "philox4x64-10/seedsequence-spawn; u=(raw>>11)*2^-53"

_MASK64 = (1 << 64) - 1
_TWO_NEG_53 = 2.0**-53


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def child(seed: int, *path: int) -> np.random.Philox:
    """Bit generator for the sub-stream ``path`` of ``seed``."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Philox(ss)


def derive_seed(seed: int, *path: int) -> int:
    """64-bit integer seed for the sub-stream ``path`` of ``seed``."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, np.uint64)[0])


def uniforms(bitgen: np.random.Philox, size: int) -> np.ndarray:
    """``size`` doubles in [0, 1) with 53 random bits each."""
    raw = bitgen.random_raw(size)
    return (raw >> np.uint64(11)).astype(np.float64) * _TWO_NEG_53


def randbelow(bitgen: np.random.Philox, n: int) -> int:
    """Unbiased integer in [0, n) by rejection on raw 64-bit words."""
    if n <= 0:
        raise ValueError("n must be positive")
    limit = (1 << 64) - ((1 << 64) % n)
    while True:
        r = int(bitgen.random_raw())
        if r < limit:
            return r % n


def sample_without_replacement(bitgen: np.random.Philox, population: int, k: int) -> list[int]:
    """``k`` distinct indices from ``range(population)`` by a partial Fisher-Yates shuffle."""
    if not 0 <= k <= population:
        raise ValueError(f"cannot draw {k} of {population} without replacement")
    swapped: dict[int, int] = {}
    out = []
    for i in range(k):
        j = i + randbelow(bitgen, population - i)
        out.append(swapped.get(j, j))
        swapped[j] = swapped.get(i, i)
    return out
