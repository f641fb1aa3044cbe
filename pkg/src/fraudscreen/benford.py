"""First-digit law: probabilities, CDF and first-significant-digit extraction."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Iterable, Mapping, Sequence, Union

from .errors import DataError, DomainError

DIGITS = tuple(range(1, 10))

Number = Union[int, float, Decimal, str]

# Plain decimal token: optional sign, digits with optional fraction, optional exponent.
# Thousands separators, currency symbols and whitespace inside the token are rejected.
DECIMAL_TOKEN = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


def check_digit(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int) or not 1 <= d <= 9:
        raise DomainError(f"first significant digit must be an integer in 1..9, got {d!r}")
    return d


def benford_probability(d: int) -> float:
    """P(first digit = d) = log10(1 + 1/d)."""
    check_digit(d)
    return math.log10(1.0 + 1.0 / d)


def benford_cdf(d: int) -> float:
    """P(first digit <= d), via the closed form log10(d + 1)."""
    check_digit(d)
    return math.log10(d + 1)


@dataclass(frozen=True)
class DigitDistribution:
    """Probabilities (or empirical frequencies) over the digits 1..9.

    ``probs[k]`` holds the mass of digit ``k + 1``. Index by digit with
    ``dist[d]``.
    """

    probs: tuple[float, ...]
    empirical: bool = False

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != 9:
            raise DomainError(f"need 9 digit masses, got {len(probs)}")
        for d, p in zip(DIGITS, probs):
            if not (0.0 <= p <= 1.0):
                raise DomainError(f"mass for digit {d} outside [0, 1]: {p}")
        total = math.fsum(probs)
        # Empirical frequencies are count/total ratios and can only sum to 1 up to rounding.
        tol = 1e-9 if self.empirical else 1e-12
        if abs(total - 1.0) > tol:
            raise DomainError(f"digit masses sum to {total!r}, expected 1")

    def __getitem__(self, d: int) -> float:
        return self.probs[check_digit(d) - 1]

    def as_dict(self) -> dict[int, float]:
        return dict(zip(DIGITS, self.probs))

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "DigitDistribution":
        total = sum(counts)
        if total <= 0:
            raise DomainError("cannot form frequencies from zero counts")
        return cls(tuple(c / total for c in counts), empirical=True)


@dataclass(frozen=True)
class FirstDigitCounts:
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != 9:
            raise DomainError(f"need 9 digit counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise DomainError("digit counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, d: int) -> int:
        return self.counts[check_digit(d) - 1]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(DIGITS, self.counts))

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> "FirstDigitCounts":
        for d in counts:
            check_digit(d)
        return cls(tuple(counts.get(d, 0) for d in DIGITS))


def benford_distribution() -> DigitDistribution:
    return DigitDistribution(tuple(benford_probability(d) for d in DIGITS))


def _as_decimal(x: Number) -> Decimal:
    if isinstance(x, bool):
        raise DataError(f"not a monetary value: {x!r}")
    if isinstance(x, Decimal):
        return x
    if isinstance(x, int):
        return Decimal(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DataError(f"non-finite value: {x!r}")
        # repr gives the shortest round-tripping decimal, so 0.3 stays 0.3
        # instead of its binary expansion 0.29999...
        return Decimal(repr(x))
    if isinstance(x, str):
        token = x.strip()
        if not DECIMAL_TOKEN.match(token):
            raise DataError(f"malformed decimal token: {x!r}")
        try:
            return Decimal(token)
        except InvalidOperation as exc:  # pragma: no cover - regex already guards
            raise DataError(f"malformed decimal token: {x!r}") from exc
    try:
        return _as_decimal(float(x))
    except (TypeError, ValueError) as exc:
        raise DataError(f"not a monetary value: {x!r}") from exc


def first_significant_digit(x: Number) -> int:
    """Leftmost nonzero decimal digit of a positive value.

    Strings are read as decimal tokens exactly as written; floats go through
    their shortest round-trip representation.
    """
    dec = _as_decimal(x)
    if not dec.is_finite():
        raise DataError(f"non-finite value: {x!r}")
    if dec <= 0:
        raise DataError(f"value must be positive, got {x!r}")
    for digit in dec.as_tuple().digits:
        if digit:
            return digit
    raise DataError(f"no nonzero digit in {x!r}")  # pragma: no cover - dec > 0


def extract_digit_counts(values: Iterable[Number]) -> FirstDigitCounts:
    counts = [0] * 9
    for index, value in enumerate(values):
        try:
            d = first_significant_digit(value)
        except DataError as exc:
            raise DataError(f"value at index {index}: {exc}") from exc
        counts[d - 1] += 1
    return FirstDigitCounts(tuple(counts))
