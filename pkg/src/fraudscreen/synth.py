"""Synthetic ledgers and empirical calibration of the test's rejection rate.

Benford-conforming data measures the Type I error rate; manipulated data
measures power.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import rng
from .benford import benford_distribution, check_digit, extract_digit_counts
from .errors import CapacityError, DomainError
from .gof import SignificanceConfig, benford_gof_test
from .montecarlo import DEFAULT_MAX_DRAWS, MonteCarloConfig, simulate

DEFAULT_DECADES = 5
DEFAULT_DRAW_BUDGET = 10**9


class SchemeKind(str, enum.Enum):
    BENFORD = "benford"
    UNIFORM = "uniform"
    INFLATION = "inflation"


@dataclass(frozen=True)
class ManipulationScheme:
    kind: SchemeKind
    digit: Optional[int] = None
    boost: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", SchemeKind(self.kind))
        if self.kind is SchemeKind.INFLATION:
            check_digit(self.digit)
            if self.boost is None or not (0.0 <= self.boost < 1.0):
                raise DomainError(f"boost must lie in [0, 1), got {self.boost!r}")
        elif self.digit is not None or self.boost is not None:
            raise DomainError(f"{self.kind.value} scheme takes no digit/boost")

    @classmethod
    def benford_conforming(cls) -> "ManipulationScheme":
        return cls(SchemeKind.BENFORD)

    @classmethod
    def uniform_digits(cls) -> "ManipulationScheme":
        return cls(SchemeKind.UNIFORM)

    @classmethod
    def single_digit_inflation(cls, digit: int, boost: float) -> "ManipulationScheme":
        return cls(SchemeKind.INFLATION, digit, boost)

    def describe(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.kind is SchemeKind.INFLATION:
            out["digit"] = self.digit
            out["boost"] = self.boost
        return out


def _with_leading_digit(digits: np.ndarray, frac: np.ndarray) -> np.ndarray:
    # d + frac can round up to d + 1 when frac is within an ulp of 1
    m = digits + frac
    return np.minimum(m, np.nextafter(digits + 1.0, 0.0))


def generate_synthetic(
    scheme: ManipulationScheme,
    n: int,
    seed: int,
    decades: int = DEFAULT_DECADES,
) -> list[float]:
    """``n`` positive amounts in [1, 10**decades) following ``scheme``.

    Sub-stream 0 drives the Benford mantissas, 1 the magnitudes, 2 the
    inflation coin flips and 3 the replacement mantissas, so a zero boost
    reproduces the Benford-conforming ledger exactly.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    scale = 10.0 ** np.floor(rng.uniforms(rng.child(seed, 1), n) * decades)
    if scheme.kind is SchemeKind.UNIFORM:
        u = rng.uniforms(rng.child(seed, 0), 2 * n)
        digits = 1.0 + np.floor(u[:n] * 9.0)
        mantissa = _with_leading_digit(digits, u[n:])
    else:
        mantissa = 10.0 ** rng.uniforms(rng.child(seed, 0), n)
        if scheme.kind is SchemeKind.INFLATION and scheme.boost > 0:
            hit = rng.uniforms(rng.child(seed, 2), n) < scheme.boost
            moved = _with_leading_digit(np.full(n, float(scheme.digit)), rng.uniforms(rng.child(seed, 3), n))
            mantissa = np.where(hit, moved, mantissa)
    return [float(x) for x in mantissa * scale]


@dataclass(frozen=True)
class CalibrationReport:
    trials: int
    rejections: int
    rejection_rate: float
    alpha: float
    scheme: ManipulationScheme
    epsilon: float
    n: int
    seed: int
    draws_per_trial: int
    theoretical_rejections: Optional[int] = None

    @property
    def theoretical_rejection_rate(self) -> Optional[float]:
        if self.theoretical_rejections is None:
            return None
        return self.theoretical_rejections / self.trials


def _run_trial(scheme, n, epsilon, cfg, master_seed, trial, compare_theoretical, max_draws):
    trial_seed = rng.derive_seed(master_seed, trial)
    counts = extract_digit_counts(generate_synthetic(scheme, n, rng.derive_seed(trial_seed, 0)))
    sim = simulate(MonteCarloConfig(epsilon, n, rng.derive_seed(trial_seed, 1)), max_draws=max_draws)
    rejected = benford_gof_test(counts, sim.pooled_frequencies, cfg).rejected
    theo = None
    if compare_theoretical:
        theo = benford_gof_test(counts, benford_distribution(), cfg, expected_source="theoretical").rejected
    return rejected, theo


def calibrate(
    scheme: ManipulationScheme,
    trials: int,
    n: int,
    epsilon: float,
    alpha: float = 0.05,
    seed: int = 0,
    *,
    workers: int = 1,
    compare_theoretical: bool = False,
    draw_budget: int = DEFAULT_DRAW_BUDGET,
    max_draws: int = DEFAULT_MAX_DRAWS,
) -> CalibrationReport:
    """Fraction of ``trials`` synthetic ledgers on which H0 is rejected.

    Each trial runs the canonical pipeline with its own derived seed:
    generate, extract digits, simulate reference frequencies, test.
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials}")
    rng.check_seed(seed)
    cfg = SignificanceConfig(alpha=alpha)
    per_trial = MonteCarloConfig(epsilon, n, 0).epoch_count * n
    if per_trial * trials > draw_budget:
        raise CapacityError(
            f"calibration needs {per_trial * trials} simulated draws, budget is {draw_budget}"
        )

    def one(t: int):
        return _run_trial(scheme, n, epsilon, cfg, seed, t, compare_theoretical, max_draws)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, range(trials)))
    else:
        outcomes = [one(t) for t in range(trials)]

    rejections = sum(1 for r, _ in outcomes if r)
    theoretical = sum(1 for _, th in outcomes if th) if compare_theoretical else None
    return CalibrationReport(
        trials=trials,
        rejections=rejections,
        rejection_rate=rejections / trials,
        alpha=alpha,
        scheme=scheme,
        epsilon=epsilon,
        n=n,
        seed=seed,
        draws_per_trial=per_trial,
        theoretical_rejections=theoretical,
    )
