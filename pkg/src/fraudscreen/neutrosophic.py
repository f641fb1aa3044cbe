"""Neutrosophic (T, I, U) assessment of whether detected manipulation is fraud.

Each component is a closed subinterval of [0, 1]: the range within which the
truth, indeterminacy and falsity of "fraud was committed" vary, given that
the rejection of H0 was not a Type I error. The three suprema may sum to as
much as 3, so the components are not required to be complementary.

Quantifying a component from named factors (weighted mean of scores, widened
by a fixed half-width) is a convention of this package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import yaml

from .errors import DataError, DomainError, PreconditionError
from .gof import Decision, GofResult

SUP_SUM_BOUND = 3.0
DEFAULT_WIDTH = 0.1
DEFAULT_TAU = 0.75
CLASSICAL_TOL = 1e-12


@dataclass(frozen=True)
class UnitInterval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo < 0.0:
            raise DomainError(f"interval lower bound {lo} is below 0")
        if hi > 1.0:
            raise DomainError(f"interval upper bound {hi} exceeds 1")
        if lo > hi:
            raise DomainError(f"interval lower bound {lo} exceeds upper bound {hi}")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def as_list(self) -> list[float]:
        return [self.lo, self.hi]


@dataclass(frozen=True)
class NeutrosophicProbability:
    t: UnitInterval
    i: UnitInterval
    u: UnitInterval

    def __post_init__(self) -> None:
        for name in ("t", "i", "u"):
            if not isinstance(getattr(self, name), UnitInterval):
                raise DomainError(f"component {name} must be a UnitInterval")
        sup_sum = self.t.hi + self.i.hi + self.u.hi
        if sup_sum > SUP_SUM_BOUND:
            raise DomainError(f"sum of component suprema {sup_sum} exceeds {SUP_SUM_BOUND}")
        if self.t.lo + self.i.lo + self.u.lo < 0:  # pragma: no cover - implied by intervals
            raise DomainError("sum of component infima is negative")


def make_neutrosophic(t: UnitInterval, i: UnitInterval, u: UnitInterval) -> NeutrosophicProbability:
    return NeutrosophicProbability(t, i, u)


def is_classical(np_: NeutrosophicProbability) -> bool:
    """True when the triple carries no indeterminacy and truth + falsity = 1."""
    return (
        np_.i.lo == 0.0
        and np_.i.hi == 0.0
        and np_.t.degenerate
        and np_.u.degenerate
        and abs(np_.t.lo + np_.u.lo - 1.0) <= CLASSICAL_TOL
    )


@dataclass(frozen=True)
class Factor:
    name: str
    score: float
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.score <= 1.0):
            raise DomainError(f"factor {self.name!r}: score must lie in [0, 1], got {self.score!r}")
        if not (self.weight > 0 and math.isfinite(self.weight)):
            raise DomainError(f"factor {self.name!r}: weight must be positive, got {self.weight!r}")


@dataclass(frozen=True)
class FactorAssessment:
    truth_factors: tuple[Factor, ...]
    falsity_factors: tuple[Factor, ...]
    indeterminacy_factors: tuple[Factor, ...]
    width: float = DEFAULT_WIDTH

    def __post_init__(self) -> None:
        for name in ("truth_factors", "falsity_factors", "indeterminacy_factors"):
            object.__setattr__(self, name, tuple(_coerce_factor(f) for f in getattr(self, name)))
        if not (0.0 <= self.width <= 0.5):
            raise DomainError(f"width must lie in [0, 0.5], got {self.width!r}")


def _coerce_factor(f) -> Factor:
    if isinstance(f, Factor):
        return f
    return Factor(*f)


def aggregate_component(factors: Sequence, width: float) -> UnitInterval:
    """Weighted mean of factor scores, widened by ``width`` on each side and clipped to [0, 1]."""
    factors = [_coerce_factor(f) for f in factors]
    if not factors:
        raise DomainError("cannot aggregate an empty factor list")
    if not (0.0 <= width <= 0.5):
        raise DomainError(f"width must lie in [0, 0.5], got {width!r}")
    point = math.fsum(f.weight * f.score for f in factors) / math.fsum(f.weight for f in factors)
    point = min(1.0, max(0.0, point))
    return UnitInterval(max(0.0, point - width), min(1.0, point + width))


def assess(assessment: FactorAssessment) -> NeutrosophicProbability:
    w = assessment.width
    return make_neutrosophic(
        aggregate_component(assessment.truth_factors, w),
        aggregate_component(assessment.indeterminacy_factors, w),
        aggregate_component(assessment.falsity_factors, w),
    )


def conditional_fraud_probability(gof: GofResult, assessment: FactorAssessment) -> NeutrosophicProbability:
    """NP(F | no Type I error): defined only once H0 has been rejected.

    The test result supplies the conditioning event and nothing else; the
    triple itself comes from the factor assessment.
    """
    if gof.decision is not Decision.REJECT_H0:
        raise PreconditionError("no manipulation detected; NP(F|E^c) undefined")
    return assess(assessment)


class OutcomeLabel(str, enum.Enum):
    DEFINITELY_FRAUDULENT = "DefinitelyFraudulent"
    MAY_OR_MAY_NOT_BE_FRAUDULENT = "MayOrMayNotBeFraudulent"
    DEFINITELY_NOT_FRAUDULENT = "DefinitelyNotFraudulent"


@dataclass(frozen=True)
class FraudOutcome:
    label: OutcomeLabel
    rationale: str


def interpret_outcome(np_: NeutrosophicProbability, tau: float = DEFAULT_TAU) -> FraudOutcome:
    if not (0.5 < tau <= 1.0):
        raise DomainError(f"tau must lie in (0.5, 1], got {tau!r}")
    t, u = np_.t, np_.u
    if t.lo >= tau and u.hi <= 1.0 - tau:
        return FraudOutcome(
            OutcomeLabel.DEFINITELY_FRAUDULENT,
            f"truth lower bound {t.lo:g} >= {tau:g} and falsity upper bound {u.hi:g} <= {1 - tau:g}",
        )
    if u.lo >= tau and t.hi <= 1.0 - tau:
        return FraudOutcome(
            OutcomeLabel.DEFINITELY_NOT_FRAUDULENT,
            f"falsity lower bound {u.lo:g} >= {tau:g} and truth upper bound {t.hi:g} <= {1 - tau:g}",
        )
    return FraudOutcome(
        OutcomeLabel.MAY_OR_MAY_NOT_BE_FRAUDULENT,
        f"neither truth nor falsity clears threshold {tau:g}",
    )


# --- factors file -----------------------------------------------------------

_SECTIONS = ("truth", "falsity", "indeterminacy")


def _where(node: yaml.Node) -> str:
    return f"line {node.start_mark.line + 1}"


def _scalar(node: yaml.Node, what: str):
    if not isinstance(node, yaml.ScalarNode):
        raise DataError(f"{_where(node)}: {what} must be a scalar")
    return yaml.safe_load(yaml.serialize(node))


def _number(node: yaml.Node, what: str) -> float:
    value = _scalar(node, what)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DataError(f"{_where(node)}: {what} must be a number, got {node.value!r}")
    return float(value)


def _mapping(node: yaml.Node, what: str) -> dict[str, tuple[yaml.Node, yaml.Node]]:
    if not isinstance(node, yaml.MappingNode):
        raise DataError(f"{_where(node)}: {what} must be a mapping")
    out: dict[str, tuple[yaml.Node, yaml.Node]] = {}
    for key_node, value_node in node.value:
        key = _scalar(key_node, "key")
        if not isinstance(key, str):
            raise DataError(f"{_where(key_node)}: keys must be strings")
        if key in out:
            raise DataError(f"{_where(key_node)}: duplicate key {key!r}")
        out[key] = (key_node, value_node)
    return out


def _factor(node: yaml.Node, section: str) -> Factor:
    fields = _mapping(node, f"{section} factor")
    unknown = set(fields) - {"name", "score", "weight"}
    if unknown:
        key_node = fields[sorted(unknown)[0]][0]
        raise DataError(f"{_where(key_node)}: unknown factor field {sorted(unknown)[0]!r}")
    for required in ("name", "score"):
        if required not in fields:
            raise DataError(f"{_where(node)}: {section} factor missing {required!r}")
    name = _scalar(fields["name"][1], "name")
    if not isinstance(name, str) or not name:
        raise DataError(f"{_where(fields['name'][1])}: factor name must be a non-empty string")
    score = _number(fields["score"][1], "score")
    weight = _number(fields["weight"][1], "weight") if "weight" in fields else 1.0
    try:
        return Factor(name, score, weight)
    except DomainError as exc:
        raise DataError(f"{_where(node)}: {exc}") from exc


def parse_assessment(text: str, source: str = "<factors>") -> FactorAssessment:
    """Parse a factors document (JSON or YAML) with line-precise errors."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else "unknown line"
        raise DataError(f"{source}: {where}: not valid JSON/YAML ({getattr(exc, 'problem', exc)})") from exc
    if root is None:
        raise DataError(f"{source}: factors file is empty")
    try:
        top = _mapping(root, "factors document")
        unknown = set(top) - set(_SECTIONS) - {"width"}
        if unknown:
            key = sorted(unknown)[0]
            raise DataError(f"{_where(top[key][0])}: unknown top-level key {key!r}")
        lists = {}
        for section in _SECTIONS:
            if section not in top:
                raise DataError(f"{_where(root)}: missing top-level key {section!r}")
            seq = top[section][1]
            if not isinstance(seq, yaml.SequenceNode) or not seq.value:
                raise DataError(f"{_where(seq)}: {section!r} must be a non-empty list of factors")
            lists[section] = tuple(_factor(item, section) for item in seq.value)
        width = DEFAULT_WIDTH
        if "width" in top:
            width = _number(top["width"][1], "width")
            if not (0.0 <= width <= 0.5):
                raise DataError(f"{_where(top['width'][1])}: width must lie in [0, 0.5], got {width}")
    except DataError as exc:
        raise DataError(f"{source}: {exc}") from exc
    return FactorAssessment(lists["truth"], lists["falsity"], lists["indeterminacy"], width)


def load_assessment(path: str | Path) -> FactorAssessment:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read factors file {path}: {exc.strerror}") from exc
    return parse_assessment(text, str(path))
