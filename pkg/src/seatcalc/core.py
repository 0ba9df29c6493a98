"""Core data model: states, quotas and integer-part families.

Everything downstream works on two views of an electorate at a given
divisor ``D``: the per-state quota table (``q_c = v_c / D``) and its
partition into families, where family ``f`` collects the states whose
quota has integer part ``f``.  Family ``f``'s quota is the sum of its
members' quotas, and under family-quota rounding the family as a whole
is rounded before seats are split among members by size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "StateProfile",
    "QuotaEntry",
    "QuotaTable",
    "Family",
    "FamilyPartition",
    "Apportionment",
    "compute_quotas",
    "partition_families",
]


@dataclass(frozen=True)
class StateProfile:
    """A state with a name and a positive population (or vote count)."""

    name: str
    population: float

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("state name must be non-empty")
        if not (self.population > 0) or not math.isfinite(self.population):
            raise ValueError(
                f"population of {self.name!r} must be positive and finite, "
                f"got {self.population!r}"
            )


@dataclass(frozen=True)
class QuotaEntry:
    """One state's quota at a fixed divisor."""

    state: StateProfile
    quota: float

    @property
    def family(self) -> int:
        return int(math.floor(self.quota))

    @property
    def fraction(self) -> float:
        return self.quota - math.floor(self.quota)


@dataclass(frozen=True)
class QuotaTable:
    """All states' quotas at one divisor, in the input state order."""

    divisor: float
    entries: tuple[QuotaEntry, ...]

    @property
    def total_population(self) -> float:
        return sum(e.state.population for e in self.entries)

    @property
    def total_quota(self) -> float:
        return sum(e.quota for e in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Family:
    """States sharing the integer part ``index`` of their quota.

    ``members`` are ordered by population ascending (ties broken by
    name), which is the order used when a family's seats are split
    between its smaller and larger members.
    """

    index: int
    members: tuple[QuotaEntry, ...]

    @property
    def quota(self) -> float:
        """Family quota Q_f: the sum of members' quotas."""
        return sum(e.quota for e in self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def population(self) -> float:
        return sum(e.state.population for e in self.members)


@dataclass(frozen=True)
class FamilyPartition:
    """The quota table regrouped into families, sorted by family index."""

    divisor: float
    families: tuple[Family, ...]
    by_index: dict[int, Family] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "by_index", {f.index: f for f in self.families})

    def __iter__(self):
        return iter(self.families)

    def __len__(self) -> int:
        return len(self.families)

    def family(self, index: int) -> Family | None:
        return self.by_index.get(index)


@dataclass(frozen=True)
class Apportionment:
    """A complete seat assignment at one divisor.

    ``seats`` maps state name to its integer seat count; ``divisor`` is
    the divisor that produced it.  Target-house-size searches attach
    ``d_interval``, the maximal divisor run (lo, hi] over which this
    exact seat vector holds (hi may be ``math.inf``).  Iteration yields
    ``(name, seats)`` pairs in the order states were supplied.
    """

    divisor: float
    seats: dict[str, int]
    quotas: QuotaTable
    d_interval: tuple[float, float] | None = None

    @property
    def total_seats(self) -> int:
        return sum(self.seats.values())

    def __iter__(self):
        return iter(self.seats.items())

    def __getitem__(self, name: str) -> int:
        return self.seats[name]


def compute_quotas(states: list[StateProfile] | tuple[StateProfile, ...],
                   divisor: float) -> QuotaTable:
    """Quota table ``q_c = v_c / D`` for every state at divisor ``D``."""
    if not (divisor > 0) or not math.isfinite(divisor):
        raise ValueError(f"divisor must be positive and finite, got {divisor!r}")
    if not states:
        raise ValueError("need at least one state")
    names = [s.name for s in states]
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise ValueError(f"duplicate state names: {', '.join(dup)}")
    entries = tuple(QuotaEntry(s, s.population / divisor) for s in states)
    return QuotaTable(divisor, entries)


def partition_families(quotas: QuotaTable) -> FamilyPartition:
    """Group quota entries into families by the integer part of the quota.

    Only non-empty families appear.  Members are sorted by population
    ascending, ties by name, so positional splits are deterministic.
    """
    groups: dict[int, list[QuotaEntry]] = {}
    for entry in quotas:
        groups.setdefault(entry.family, []).append(entry)
    families = tuple(
        Family(idx, tuple(sorted(groups[idx],
                                 key=lambda e: (e.state.population, e.state.name))))
        for idx in sorted(groups)
    )
    return FamilyPartition(quotas.divisor, families)
