"""Manipulation-involvement (MI) matrix: an 8 x 5 grid classifying a fraud case
by who was involved (rows i = 1..8) and how records were manipulated
(columns j = 1..5).

Rows are ordered by complexity of involvement: i = 8 is the simplest case
(one fraud, one person) and i = 1 the most complex (repeated fraud by a
vertically collusive group).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError


class Multiplicity(str, enum.Enum):
    SINGLE = "single"
    MULTIPLE = "multiple"


class Structure(str, enum.Enum):
    INDIVIDUAL = "individual"
    ISOLATED_GROUP = "isolated-group"
    HORIZONTAL_COLLUSION = "horizontal"
    VERTICAL_COLLUSION = "vertical"


class ManipulationKind(str, enum.Enum):
    SINGLE_ENTRY_FALSIFICATION = "single-entry"
    DOUBLE_ENTRY_FALSIFICATION = "double-entry"
    NATURE_MISREPRESENTATION = "misrepresentation"
    RECORD_SUPPRESSION = "suppression"


INVOLVEMENT_LABELS = {
    8: "Single fraud perpetrated by single individual",
    7: "Multiple frauds perpetrated by single individual",
    6: "Single fraud perpetrated by group of isolated individuals",
    5: "Multiple frauds perpetrated by group of isolated individuals",
    4: "Single fraud perpetrated by a horizontally collusive group",
    3: "Multiple frauds perpetrated by a horizontally collusive group",
    2: "Single fraud perpetrated by a vertically collusive group",
    1: "Multiple frauds perpetrated by a vertically collusive group",
}

MANIPULATION_LABELS = {
    5: "Combination of 1, 2, 3 and 4",
    4: "Suppression or destruction of key transaction records",
    3: "Misrepresentation of the fundamental nature of transaction",
    2: "Falsification of transaction date/amount/particulars (double-entry basis)",
    1: "Falsification of transaction date/amount/particulars (single-entry basis)",
}

INVOLVEMENT_CODES = {
    (Multiplicity.SINGLE, Structure.INDIVIDUAL): 8,
    (Multiplicity.MULTIPLE, Structure.INDIVIDUAL): 7,
    (Multiplicity.SINGLE, Structure.ISOLATED_GROUP): 6,
    (Multiplicity.MULTIPLE, Structure.ISOLATED_GROUP): 5,
    (Multiplicity.SINGLE, Structure.HORIZONTAL_COLLUSION): 4,
    (Multiplicity.MULTIPLE, Structure.HORIZONTAL_COLLUSION): 3,
    (Multiplicity.SINGLE, Structure.VERTICAL_COLLUSION): 2,
    (Multiplicity.MULTIPLE, Structure.VERTICAL_COLLUSION): 1,
}

MANIPULATION_CODES = {
    ManipulationKind.SINGLE_ENTRY_FALSIFICATION: 1,
    ManipulationKind.DOUBLE_ENTRY_FALSIFICATION: 2,
    ManipulationKind.NATURE_MISREPRESENTATION: 3,
    ManipulationKind.RECORD_SUPPRESSION: 4,
}
COMBINATION_CODE = 5


@dataclass(frozen=True, order=True)
class MICell:
    involvement: int
    manipulation: int

    def __post_init__(self) -> None:
        if self.involvement not in INVOLVEMENT_LABELS:
            raise DomainError(f"involvement code must be in 1..8, got {self.involvement!r}")
        if self.manipulation not in MANIPULATION_LABELS:
            raise DomainError(f"manipulation code must be in 1..5, got {self.manipulation!r}")

    def __str__(self) -> str:
        return f"alpha_{self.involvement}{self.manipulation}"


@dataclass(frozen=True)
class CaseDescriptor:
    fraud_multiplicity: Multiplicity
    perpetrator_structure: Structure
    manipulation_kinds: frozenset[ManipulationKind]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fraud_multiplicity", Multiplicity(self.fraud_multiplicity))
        object.__setattr__(self, "perpetrator_structure", Structure(self.perpetrator_structure))
        kinds = frozenset(ManipulationKind(k) for k in self.manipulation_kinds)
        if not kinds:
            raise DomainError("at least one manipulation kind is required")
        object.__setattr__(self, "manipulation_kinds", kinds)


def classify(case: CaseDescriptor) -> MICell:
    i = INVOLVEMENT_CODES[(case.fraud_multiplicity, case.perpetrator_structure)]
    if len(case.manipulation_kinds) == 1:
        (kind,) = case.manipulation_kinds
        j = MANIPULATION_CODES[kind]
    else:
        j = COMBINATION_CODE
    return MICell(i, j)


def describe(cell: MICell) -> tuple[str, str]:
    return INVOLVEMENT_LABELS[cell.involvement], MANIPULATION_LABELS[cell.manipulation]


def all_cells() -> Iterable[MICell]:
    for i in sorted(INVOLVEMENT_LABELS):
        for j in sorted(MANIPULATION_LABELS):
            yield MICell(i, j)
