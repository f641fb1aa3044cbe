"""Epoch-grouped inverse-transform simulation of first digits.

The simulated pooled frequencies stand in for the steady-state digit
frequencies that a finite audit sample is compared against.
"""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng
from .benford import DIGITS, DigitDistribution, benford_cdf
from .errors import CapacityError, DomainError

DEFAULT_MAX_DRAWS = 10**8

# Upper edges of the nine inverse-transform ranges; the last edge is exactly 1.
_CDF = tuple(benford_cdf(d) for d in DIGITS)
_CDF_ARRAY = np.array(_CDF[:-1])


def run_length(epsilon: float) -> float:
    """Target Monte Carlo run length (1 / (2 epsilon)) ** (2/3)."""
    if not (0.0 < epsilon < 1.0):
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    return (1.0 / (2.0 * epsilon)) ** (2.0 / 3.0)


def draw_digit(u: float) -> int:
    """Smallest digit d with u < cdf(d)."""
    if not (0.0 <= u < 1.0):
        raise DomainError(f"uniform variate must lie in [0, 1), got {u!r}")
    return bisect.bisect_right(_CDF, u) + 1


def draw_digits(u: np.ndarray) -> np.ndarray:
    """Vectorised :func:`draw_digit`; ``u`` must already lie in [0, 1)."""
    return np.searchsorted(_CDF_ARRAY, u, side="right") + 1


@dataclass(frozen=True)
class MonteCarloConfig:
    epsilon: float
    epoch_size: int
    seed: int

    def __post_init__(self) -> None:
        if not (0.0 < self.epsilon < 1.0):
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if isinstance(self.epoch_size, bool) or int(self.epoch_size) != self.epoch_size or self.epoch_size < 1:
            raise DomainError(f"epoch_size must be a positive integer, got {self.epoch_size!r}")
        try:
            rng.check_seed(self.seed)
        except (TypeError, ValueError) as exc:
            raise DomainError(str(exc)) from exc

    @property
    def lambda_star(self) -> float:
        return run_length(self.epsilon)

    @property
    def epoch_count(self) -> int:
        return max(1, math.ceil(self.lambda_star / self.epoch_size))


@dataclass(frozen=True)
class SimulationResult:
    lambda_star: float
    epoch_size: int
    epoch_count: int
    total_draws: int
    epoch_counts: tuple[tuple[int, ...], ...]
    pooled_counts: tuple[int, ...]
    seed: int
    generator: str = rng.GENERATOR_NAME

    @property
    def epoch_frequencies(self) -> list[DigitDistribution]:
        return [DigitDistribution.from_counts(c) for c in self.epoch_counts]

    @property
    def pooled_frequencies(self) -> DigitDistribution:
        return DigitDistribution.from_counts(self.pooled_counts)


def _epoch_counts(seed: int, epoch: int, size: int) -> tuple[int, ...]:
    u = rng.uniforms(rng.child(seed, epoch), size)
    counts = np.bincount(draw_digits(u), minlength=10)[1:]
    return tuple(int(c) for c in counts)


def simulate(
    config: MonteCarloConfig,
    *,
    workers: int = 1,
    max_draws: int = DEFAULT_MAX_DRAWS,
) -> SimulationResult:
    """Run ``epoch_count`` epochs of ``epoch_size`` draws each.

    Epoch ``e`` reads the sub-stream ``child(seed, e)``, so the result does not
    depend on ``workers``.
    """
    m = config.epoch_count
    n = int(config.epoch_size)
    total = m * n
    if total > max_draws:
        raise CapacityError(f"simulation needs {total} draws, limit is {max_draws}")

    if workers > 1 and m > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            epochs = tuple(pool.map(lambda e: _epoch_counts(config.seed, e, n), range(m)))
    else:
        epochs = tuple(_epoch_counts(config.seed, e, n) for e in range(m))

    pooled = tuple(int(sum(col)) for col in zip(*epochs))
    return SimulationResult(
        lambda_star=config.lambda_star,
        epoch_size=n,
        epoch_count=m,
        total_draws=total,
        epoch_counts=epochs,
        pooled_counts=pooled,
        seed=int(config.seed),
    )
