from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Tuple


class Strictness(str, Enum):
    STRICT = "strict"   # "much less than"
    PLAIN = "plain"     # "less than"


class Status(str, Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"
    NOT_APPLICABLE = "not_applicable"


def margin_of(lhs: float, rhs: float) -> float:
    """rhs / lhs, infinite when the left side vanishes."""
    if lhs == 0.0:
        return math.inf
    return rhs / lhs


@dataclass(frozen=True)
class ConstraintMember:
    label: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return margin_of(self.lhs, self.rhs)


@dataclass(frozen=True)
class ConstraintEntry:
    """One operating condition; lhs/rhs/margin are those of its worst member."""
    index: int
    name: str
    strictness: Strictness
    threshold: float
    status: Status
    members: Tuple[ConstraintMember, ...] = ()
    note: str = ""

    @property
    def worst(self) -> Optional[ConstraintMember]:
        if not self.members:
            return None
        return min(self.members, key=lambda m: m.margin)

    @property
    def lhs(self) -> float:
        return self.worst.lhs if self.members else math.nan

    @property
    def rhs(self) -> float:
        return self.worst.rhs if self.members else math.nan

    @property
    def margin(self) -> float:
        return self.worst.margin if self.members else math.nan

    @property
    def satisfied(self) -> bool:
        return self.status is Status.SATISFIED


@dataclass(frozen=True)
class ConstraintReport:
    entries: Tuple[ConstraintEntry, ...] = field(default_factory=tuple)

    def __iter__(self) -> Iterator[ConstraintEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> ConstraintEntry:
        """Entries are numbered from 1."""
        for entry in self.entries:
            if entry.index == index:
                return entry
        raise KeyError(f"No constraint entry {index!r}")

    def violated(self, strictness: Optional[Strictness] = None) -> Tuple[ConstraintEntry, ...]:
        return tuple(
            e for e in self.entries
            if e.status is Status.VIOLATED and (strictness is None or e.strictness is strictness)
        )

    @property
    def all_satisfied(self) -> bool:
        """True when nothing is violated; indeterminate and not-applicable entries do not count."""
        return not self.violated()
