"""Ledger loading and audit sample selection."""

from __future__ import annotations

import csv
import enum
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Sequence

from . import rng
from .benford import DECIMAL_TOKEN, FirstDigitCounts, extract_digit_counts
from .errors import DataError, DomainError

log = logging.getLogger(__name__)

EXCLUSION_REASONS = ("blank", "malformed", "zero", "negative")


@dataclass(frozen=True)
class LedgerRecord:
    row_index: int
    amount_text: str
    amount: float


@dataclass(frozen=True)
class LedgerLoad:
    """Records kept from a ledger file plus a tally of excluded rows by reason."""

    path: str
    column: str
    records: tuple[LedgerRecord, ...]
    exclusions: dict[str, int] = field(default_factory=dict)

    @property
    def rows_read(self) -> int:
        return len(self.records) + sum(self.exclusions.values())

    @property
    def rows_excluded(self) -> int:
        return sum(self.exclusions.values())


def _classify_token(token: str) -> tuple[str | None, float | None]:
    """Return (exclusion reason, parsed amount); reason is None for usable tokens."""
    token = token.strip()
    if not token:
        return "blank", None
    if not DECIMAL_TOKEN.match(token):
        return "malformed", None
    value = Decimal(token)
    if value == 0:
        return "zero", None
    if value < 0:
        return "negative", None
    amount = float(value)
    if not math.isfinite(amount) or amount == 0.0:
        # outside double range; the text is fine but the parsed amount is not
        return "malformed", None
    return None, amount


def load_ledger(path: str | Path, column: str = "amount", delimiter: str = ",") -> LedgerLoad:
    path = Path(path)
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open ledger {path}: {exc.strerror}") from exc
    records: list[LedgerRecord] = []
    exclusions: Counter[str] = Counter()
    with handle:
        reader = csv.reader(handle, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"ledger {path} is empty (no header row)") from None
        except (csv.Error, UnicodeDecodeError) as exc:
            raise DataError(f"ledger {path}: {exc}") from exc
        header = [h.strip() for h in header]
        if column not in header:
            raise DataError(f"ledger {path} has no column {column!r} (columns: {', '.join(header)})")
        col = header.index(column)
        try:
            for row_index, row in enumerate(reader):
                if not row:
                    exclusions["blank"] += 1
                    continue
                if col >= len(row):
                    exclusions["malformed"] += 1
                    continue
                token = row[col].strip()
                reason, amount = _classify_token(token)
                if reason is not None:
                    if reason == "negative":
                        log.warning("ledger %s row %d: negative amount %s excluded", path, row_index, token)
                    exclusions[reason] += 1
                    continue
                records.append(LedgerRecord(row_index, token, amount))
        except (csv.Error, UnicodeDecodeError) as exc:
            raise DataError(f"ledger {path}: {exc}") from exc
    if not records:
        raise DataError(f"ledger {path} has no usable rows in column {column!r}")
    return LedgerLoad(
        path=str(path),
        column=column,
        records=tuple(records),
        exclusions={r: exclusions[r] for r in EXCLUSION_REASONS if exclusions[r]},
    )


class SamplingMethod(str, enum.Enum):
    SIMPLE_RANDOM = "simple"
    SYSTEMATIC = "systematic"


@dataclass(frozen=True)
class SamplingPlan:
    method: SamplingMethod
    size: int
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", SamplingMethod(self.method))
        if isinstance(self.size, bool) or int(self.size) != self.size or self.size < 1:
            raise DomainError(f"sample size must be a positive integer, got {self.size!r}")
        try:
            rng.check_seed(self.seed)
        except (TypeError, ValueError) as exc:
            raise DomainError(str(exc)) from exc


def draw_sample(records: Sequence[LedgerRecord], plan: SamplingPlan) -> list[LedgerRecord]:
    """Select ``plan.size`` records; output keeps ledger order."""
    population = len(records)
    n = plan.size
    if n > population:
        raise DomainError(f"sample size {n} exceeds population of {population} records")
    bitgen = rng.child(plan.seed, 0)
    if plan.method is SamplingMethod.SIMPLE_RANDOM:
        picks = sorted(rng.sample_without_replacement(bitgen, population, n))
    else:
        step = population // n
        start = rng.randbelow(bitgen, step)
        picks = [start + k * step for k in range(n)]
    return [records[k] for k in picks]


def sample_digit_counts(sample: Sequence[LedgerRecord]) -> FirstDigitCounts:
    """First-digit counts read from each record's original text token."""
    return extract_digit_counts(r.amount_text for r in sample)
