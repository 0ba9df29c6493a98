"""Detection of the Alabama, New States, and multiple-solution paradoxes.

Detection is mechanical, not narrative: the Alabama scan walks the
exact critical divisors of a method from high D to low and reports any
state whose seats drop as D drops; the New States check replays an
insertion at fixed D; the multiple-solution probe simply surfaces every
apportionment a target house size admits.  Reports are plain value
objects whose before/after apportionments re-evaluate to themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .core import Apportionment, StateProfile, compute_quotas, partition_families
from .engine import (
    BY_FAMILY,
    MethodSpec,
    apportion_at_divisor,
    apportion_for_house_size,
    piecewise_apportionments,
    round_quota,
)
from .signposts import WEBSTER

__all__ = [
    "ALABAMA",
    "NEW_STATES",
    "MULTIPLE_SOLUTION",
    "ParadoxReport",
    "scan_alabama",
    "check_new_states",
    "find_multiple_solutions",
    "as_multiple_solution_report",
    "family_of_families_fixture",
]

ALABAMA = "alabama"
NEW_STATES = "new_states"
MULTIPLE_SOLUTION = "multiple_solution"


@dataclass(frozen=True)
class ParadoxReport:
    """One observed paradox instance.

    ``witness`` is the critical divisor for Alabama reports, the added
    state for New States reports, and the tuple of divisor intervals
    for multiple-solution reports.  ``affected_states`` lists
    (name, seats_before, seats_after) for every state whose count
    changed the offending way.
    """

    kind: str
    witness: object
    before: Apportionment
    after: Apportionment
    affected_states: tuple[tuple[str, int, int], ...]

    def describe(self) -> str:
        parts = []
        if self.kind == ALABAMA:
            parts.append(
                f"Alabama paradox at divisor {self.witness:.10g}: "
                f"total {self.before.total_seats} -> {self.after.total_seats} "
                f"as the divisor decreases through it"
            )
        elif self.kind == NEW_STATES:
            st = self.witness
            parts.append(
                f"New States paradox: adding {st.name} (population {st.population:g}) "
                f"at fixed divisor changed incumbent seats"
            )
        else:
            parts.append(
                f"multiple-solution paradox: {self.before.total_seats} total seats "
                f"achieved by distinct seat vectors"
            )
        for name, s_before, s_after in self.affected_states:
            parts.append(f"  {name}: {s_before} -> {s_after}")
        return "\n".join(parts)


def scan_alabama(states, method: MethodSpec, d_lo: float, d_hi: float,
                 ) -> list[ParadoxReport]:
    """Walk critical divisors from d_hi down; report every seat loss.

    A report means some state's count decreased while D decreased (the
    house was growing or holding), which a divisor method can never do.
    An empty list certifies the method clean on this instance and range.
    """
    pieces = piecewise_apportionments(states, method, d_lo, d_hi)
    reports = []
    # pieces ascend in D; walk adjacent pairs from the top down
    for (lo_b, hi_b, after), (lo_a, hi_a, before) in zip(pieces, pieces[1:]):
        affected = tuple(
            (name, before.seats[name], after.seats[name])
            for name in before.seats
            if after.seats[name] < before.seats[name]
        )
        if affected:
            reports.append(ParadoxReport(
                kind=ALABAMA,
                witness=hi_b,  # the divisor at which the lower piece's seats take over
                before=replace(before, d_interval=(lo_a, hi_a)),
                after=replace(after, d_interval=(lo_b, hi_b)),
                affected_states=affected,
            ))
    return reports


def check_new_states(states, method: MethodSpec, divisor: float,
                     new_state: StateProfile) -> ParadoxReport | None:
    """Insert one state at fixed D and compare incumbents' seats."""
    states = tuple(states)
    if any(s.name == new_state.name for s in states):
        raise ValueError(f"state name {new_state.name!r} already in use")
    before = apportion_at_divisor(states, divisor, method)
    after = apportion_at_divisor(states + (new_state,), divisor, method)
    affected = tuple(
        (name, before.seats[name], after.seats[name])
        for name in before.seats
        if after.seats[name] != before.seats[name]
    )
    if not affected:
        return None
    return ParadoxReport(
        kind=NEW_STATES,
        witness=new_state,
        before=before,
        after=after,
        affected_states=affected,
    )


def find_multiple_solutions(states, method: MethodSpec, target_total: int,
                            ) -> list[Apportionment]:
    """All distinct apportionments at the target; length 1 means no paradox."""
    return apportion_for_house_size(states, target_total, method)


def as_multiple_solution_report(solutions: list[Apportionment],
                                ) -> ParadoxReport | None:
    """Wrap a multi-solution result into a report (None if unique)."""
    if len(solutions) < 2:
        return None
    first, second = solutions[0], solutions[1]
    affected = tuple(
        (name, first.seats[name], second.seats[name])
        for name in first.seats
        if first.seats[name] != second.seats[name]
    )
    return ParadoxReport(
        kind=MULTIPLE_SOLUTION,
        witness=tuple(s.d_interval for s in solutions),
        before=first,
        after=second,
        affected_states=affected,
    )


# --- the family-of-families construction -------------------------------------
#
# Rounding family quotas fixes the Alabama paradox one level up, so it is
# tempting to iterate: group families whose quotas share an integer part
# into families-of-families and round those.  The construction below shows
# why the iteration is rotten: the combined level reintroduces exactly the
# integer-part dependence that family rounding was supposed to remove.

_FOF_POPULATIONS = (0.99999, 1.7, 2.6)
_FOF_D_BEFORE = 1.0
_FOF_D_AFTER = 0.99997  # just below the smallest state's boundary divisor


def _family_of_families_apportion(states, divisor: float) -> Apportionment:
    """Webster rounding applied hierarchically: states, families, super-families."""
    quotas = compute_quotas(states, divisor)
    partition = partition_families(quotas)
    # group families by the integer part of their quota
    groups: dict[int, list] = {}
    for fam in partition:
        groups.setdefault(math.floor(fam.quota), []).append(fam)
    family_seats: dict[int, int] = {}
    for super_index in sorted(groups):
        members = sorted(groups[super_index], key=lambda fam: (fam.population, fam.index))
        super_quota = math.fsum(fam.quota for fam in members)
        super_seats = round_quota(super_quota, WEBSTER, divisor)
        m_high = super_seats - super_index * len(members)
        m_low = len(members) - m_high
        if m_low < 0 or m_high < 0:
            raise AssertionError("family-of-families split out of range")
        for i, fam in enumerate(members):
            family_seats[fam.index] = super_index + (1 if i >= m_low else 0)
    seats: dict[str, int] = {}
    for fam in partition:
        s_f = family_seats[fam.index]
        m_high = s_f - fam.index * fam.size
        m_low = fam.size - m_high
        for i, entry in enumerate(fam.members):
            seats[entry.state.name] = fam.index + (1 if i >= m_low else 0)
    seats = {e.state.name: seats[e.state.name] for e in quotas}
    return Apportionment(divisor, seats, quotas)


def family_of_families_fixture() -> ParadoxReport:
    """Deterministic Alabama violation for hierarchical family rounding.

    Three states whose quotas start at {0.99999, 1.7, 2.6}: as the
    divisor dips below the first state's boundary, the 1.7- and
    2.6-quota families land in the same super-family, whose quota 5.3
    rounds to 5, and the largest state drops from 3 seats to 2 even
    though the divisor decreased.
    """
    states = tuple(
        StateProfile(f"state{i + 1}", pop) for i, pop in enumerate(_FOF_POPULATIONS)
    )
    before = _family_of_families_apportion(states, _FOF_D_BEFORE)
    after = _family_of_families_apportion(states, _FOF_D_AFTER)
    affected = tuple(
        (name, before.seats[name], after.seats[name])
        for name in before.seats
        if after.seats[name] < before.seats[name]
    )
    return ParadoxReport(
        kind=ALABAMA,
        witness=_FOF_POPULATIONS[0] / 1.0,  # the boundary divisor the sweep crossed
        before=before,
        after=after,
        affected_states=affected,
    )
