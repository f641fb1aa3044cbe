"""Pearson chi-square goodness-of-fit of observed first digits against a
reference digit distribution.

The p-value kernel is self-contained: regularized incomplete gamma by series
and continued fraction, with a Lanczos log-gamma.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

from .benford import DIGITS, DigitDistribution, FirstDigitCounts
from .errors import DataError, DomainError, NumericError

MAX_ITERATIONS = 10_000
_EPS = 1e-16
_TINY = 1e-300

# Lanczos coefficients for g = 7, n = 9 (Godfrey's set).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(s: float) -> float:
    """ln Gamma(s) for s > 0."""
    if not s > 0:
        raise DomainError(f"log_gamma needs s > 0, got {s!r}")
    if s < 0.5:
        # reflection keeps the Lanczos sum in its accurate range
        return math.log(math.pi / math.sin(math.pi * s)) - log_gamma(1.0 - s)
    z = s - 1.0
    acc = _LANCZOS_COEF[0]
    for k, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + k)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(acc)


def _gamma_series(s: float, x: float) -> float:
    term = total = 1.0 / s
    a = s
    for _ in range(MAX_ITERATIONS):
        a += 1.0
        term *= x / a
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + s * math.log(x) - log_gamma(s))
    raise NumericError(f"incomplete gamma series did not converge for s={s}, x={x}")


def _gamma_continued_fraction(s: float, x: float) -> float:
    # modified Lentz evaluation of the upper-tail continued fraction
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITERATIONS + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + s * math.log(x) - log_gamma(s)) * h
    raise NumericError(f"incomplete gamma continued fraction did not converge for s={s}, x={x}")


def _check_gamma_args(s: float, x: float) -> None:
    if not (s > 0 and math.isfinite(s)):
        raise DomainError(f"shape must be positive and finite, got {s!r}")
    if not x >= 0:
        raise DomainError(f"x must be non-negative, got {x!r}")


def lower_regularized_gamma(s: float, x: float) -> float:
    """P(s, x) = gamma(s, x) / Gamma(s)."""
    _check_gamma_args(s, x)
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < s + 1.0:
        return min(1.0, _gamma_series(s, x))
    return max(0.0, 1.0 - _gamma_continued_fraction(s, x))


def upper_regularized_gamma(s: float, x: float) -> float:
    """Q(s, x) = 1 - P(s, x), evaluated without cancellation in the far tail."""
    _check_gamma_args(s, x)
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < s + 1.0:
        return max(0.0, 1.0 - _gamma_series(s, x))
    return min(1.0, _gamma_continued_fraction(s, x))


def chi_square_p_value(statistic: float, dof: int) -> float:
    """Upper-tail probability of the chi-square distribution with ``dof`` degrees of freedom."""
    if isinstance(dof, bool) or int(dof) != dof or dof < 1:
        raise DomainError(f"dof must be a positive integer, got {dof!r}")
    if not statistic >= 0:
        raise DomainError(f"statistic must be non-negative, got {statistic!r}")
    return upper_regularized_gamma(dof / 2.0, statistic / 2.0)


def chi_square_statistic(observed: FirstDigitCounts, expected: Mapping[int, float]) -> float:
    """Sum over digits of (O - E)^2 / E."""
    if set(expected) != set(DIGITS):
        raise DataError(f"expected counts must cover digits 1..9, got {sorted(expected)}")
    for d, e in expected.items():
        if not e > 0:
            raise DomainError(f"expected count for digit {d} must be positive, got {e!r}")
    total_e = math.fsum(expected.values())
    if abs(total_e - observed.total) > 1e-6:
        raise DataError(f"expected counts sum to {total_e}, observed total is {observed.total}")
    return math.fsum((observed[d] - e) ** 2 / e for d, e in sorted(expected.items()))


class Decision(str, enum.Enum):
    RETAIN_H0 = "RetainH0"
    REJECT_H0 = "RejectH0"


@dataclass(frozen=True)
class SignificanceConfig:
    alpha: float = 0.05
    min_expected: float = 5.0
    pool_low_expected: bool = False

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not self.min_expected >= 0:
            raise DomainError(f"min_expected must be non-negative, got {self.min_expected!r}")


@dataclass(frozen=True)
class GofResult:
    statistic: float
    dof: int
    p_value: float
    alpha: float
    decision: Decision
    expected_counts: dict[int, float]
    observed_counts: FirstDigitCounts
    low_expected_warning: bool
    categories: tuple[tuple[int, ...], ...] = field(default=tuple((d,) for d in DIGITS))
    expected_source: str = "simulated"

    @property
    def rejected(self) -> bool:
        return self.decision is Decision.REJECT_H0


def _pool_categories(expected: Mapping[int, float], min_expected: float) -> list[tuple[int, ...]]:
    """Merge adjacent digits from 9 downward until each group reaches ``min_expected``."""
    groups: list[list[int]] = []
    current: list[int] = []
    mass = 0.0
    for d in reversed(DIGITS):
        current.append(d)
        mass += expected[d]
        if mass >= min_expected:
            groups.append(current)
            current, mass = [], 0.0
    if current:
        if groups:
            groups[-1].extend(current)
        else:
            groups.append(current)
    return sorted(tuple(sorted(g)) for g in groups)


def benford_gof_test(
    observed: FirstDigitCounts,
    simulated: DigitDistribution,
    cfg: SignificanceConfig = SignificanceConfig(),
    *,
    expected_source: str = "simulated",
) -> GofResult:
    """Test H0 (observed digits follow ``simulated``) against H1 (they do not).

    Digits with zero reference mass and zero observations carry no
    information and are left out of the statistic and the degrees of freedom.
    """
    n = observed.total
    if n < 1:
        raise DomainError("observed sample is empty")
    expected = {d: simulated[d] * n for d in DIGITS}
    for d in DIGITS:
        if expected[d] == 0 and observed[d] > 0:
            raise DomainError(
                f"reference distribution has zero mass on digit {d} but it was observed "
                f"{observed[d]} time(s); run a longer simulation (smaller epsilon)"
            )
    low = any(expected[d] < cfg.min_expected for d in DIGITS)

    if cfg.pool_low_expected:
        categories = _pool_categories(expected, cfg.min_expected)
    else:
        categories = [(d,) for d in DIGITS]
    categories = [cat for cat in categories if any(expected[d] > 0 for d in cat)]
    if len(categories) < 2:
        raise DomainError("fewer than two usable digit categories; cannot test")

    obs = [sum(observed[d] for d in cat) for cat in categories]
    exp = [math.fsum(expected[d] for d in cat) for cat in categories]
    statistic = math.fsum((o - e) ** 2 / e for o, e in zip(obs, exp))
    dof = len(categories) - 1
    p = chi_square_p_value(statistic, dof)
    decision = Decision.REJECT_H0 if p < cfg.alpha else Decision.RETAIN_H0
    return GofResult(
        statistic=statistic,
        dof=dof,
        p_value=p,
        alpha=cfg.alpha,
        decision=decision,
        expected_counts=expected,
        observed_counts=observed,
        low_expected_warning=low,
        categories=tuple(categories),
        expected_source=expected_source,
    )
