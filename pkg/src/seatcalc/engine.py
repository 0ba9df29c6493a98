"""Apportionment engine: fixed-divisor and target-house-size allocation.

Two modes share one rounding vocabulary.  In state mode every state's
quota is rounded against the marks directly.  In family mode the family
quota ``Q_f`` (sum of member quotas) is rounded to ``S_f`` seats using
the mark in ``floor(Q_f)``'s interval, and the seats are split
positionally: the ``M_f`` smallest members get ``f`` seats each and the
``M_{f+1}`` largest get ``f+1``, where ``M_f = (f+1)·N_f − S_f`` and
``M_{f+1} = S_f − f·N_f``.

Target-house-size allocation enumerates the exact critical divisors
(family-boundary and mark crossings) inside a window that provably
contains every divisor attaining the target, so methods that admit
several apportionments at one house size report all of them instead of
silently picking one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

from .core import (
    Apportionment,
    FamilyPartition,
    QuotaTable,
    StateProfile,
    compute_quotas,
    partition_families,
)

__all__ = [
    "HAMILTON",
    "BY_STATE",
    "BY_FAMILY",
    "MethodSpec",
    "FamilySplit",
    "ApportionmentError",
    "InfeasibleTarget",
    "TargetUnachievable",
    "round_quota",
    "family_splits",
    "apportion_at_divisor",
    "apportion_for_house_size",
    "breakpoints",
    "piecewise_apportionments",
]

BY_STATE = "state"
BY_FAMILY = "family"


class _Hamilton:
    """Sentinel rounding for Hamilton's largest-remainder method."""

    def __repr__(self) -> str:
        return "HAMILTON"

    def __str__(self) -> str:
        return "hamilton"


HAMILTON = _Hamilton()


class ApportionmentError(ValueError):
    """Base class for apportionment failures."""


class InfeasibleTarget(ApportionmentError):
    """The target house size is impossible for the method, at any divisor."""


class TargetUnachievable(ApportionmentError):
    """No divisor yields exactly the requested total.

    Carries the nearest achievable totals on both sides (``None`` when a
    side has none in the search window).
    """

    def __init__(self, target: int, below: int | None, above: int | None):
        self.target = target
        self.nearest_below = below
        self.nearest_above = above
        near = ", ".join(str(t) for t in (below, above) if t is not None)
        super().__init__(
            f"no divisor yields exactly {target} seats; "
            f"nearest achievable totals: {near or 'none found'}"
        )


@dataclass(frozen=True)
class MethodSpec:
    """Rounding regime plus mode.

    ``rounding`` is anything with ``mark_at(f, divisor)`` (a signpost
    rule or distribution-derived marks), or the ``HAMILTON`` sentinel.
    ``min_seat_floor``, when set, raises every state to at least that
    many seats after rounding.
    """

    rounding: object
    mode: str = BY_STATE
    min_seat_floor: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in (BY_STATE, BY_FAMILY):
            raise ValueError(f"mode must be {BY_STATE!r} or {BY_FAMILY!r}, got {self.mode!r}")
        if not isinstance(self.rounding, _Hamilton) and not hasattr(self.rounding, "mark_at"):
            raise TypeError("rounding must be HAMILTON or provide mark_at(f, divisor)")
        if self.min_seat_floor is not None and self.min_seat_floor < 0:
            raise ValueError("min_seat_floor must be non-negative")

    @property
    def is_hamilton(self) -> bool:
        return isinstance(self.rounding, _Hamilton)

    def __str__(self) -> str:
        if self.is_hamilton:
            return "hamilton"
        return f"{self.rounding}/{self.mode}"


@dataclass(frozen=True)
class FamilySplit:
    """How one family's seats divide between its smaller and larger members."""

    f: int
    size: int
    quota: float
    seats: int
    m_low: int   # members receiving f seats each (the smallest)
    m_high: int  # members receiving f+1 seats each (the largest)

    def __post_init__(self) -> None:
        if self.m_low < 0 or self.m_high < 0:
            raise ValueError(
                f"family {self.f}: seats {self.seats} outside "
                f"[{self.f * self.size}, {(self.f + 1) * self.size}]"
            )
        if self.m_low + self.m_high != self.size:
            raise ValueError(f"family {self.f}: split does not cover all members")


def round_quota(quota: float, rounding, divisor: float) -> int:
    """Round one quota against the marks at the given divisor.

    Half-open convention: with f = floor(q), the result is f+1 iff
    q >= r(f), else f (a quota exactly at the mark rounds up).  An
    exactly integral quota needs no rounding and is returned as is,
    which keeps integer quotas stable even when the mark sits on the
    interval's left edge (beta <= -1 rules).
    """
    f = math.floor(quota)
    if quota == f:
        return int(f)
    if quota >= rounding.mark_at(f, divisor):
        return int(f) + 1
    return int(f)


def family_splits(partition: FamilyPartition, rounding, divisor: float) -> tuple[FamilySplit, ...]:
    """Round every family quota and split seats within each family."""
    splits = []
    for fam in partition:
        seats = round_quota(fam.quota, rounding, divisor)
        m_high = seats - fam.index * fam.size
        m_low = fam.size - m_high
        splits.append(FamilySplit(fam.index, fam.size, fam.quota, seats, m_low, m_high))
    return tuple(splits)


def _apply_floor(seats: dict[str, int], floor: int | None) -> dict[str, int]:
    if floor is None or floor == 0:
        return seats
    return {name: max(s, floor) for name, s in seats.items()}


def apportion_at_divisor(states: Iterable[StateProfile], divisor: float,
                         method: MethodSpec) -> Apportionment:
    """Apportion at a fixed divisor (Hamilton is not divisor-based)."""
    if method.is_hamilton:
        raise ApportionmentError(
            "Hamilton's method needs a target house size, not a divisor"
        )
    states = tuple(states)
    quotas = compute_quotas(states, divisor)
    if method.mode == BY_STATE:
        seats = {e.state.name: round_quota(e.quota, method.rounding, divisor)
                 for e in quotas}
    else:
        partition = partition_families(quotas)
        seats = {}
        for fam, split in zip(partition, family_splits(partition, method.rounding, divisor)):
            for i, entry in enumerate(fam.members):
                seats[entry.state.name] = fam.index + (1 if i >= split.m_low else 0)
        # restore input state order
        seats = {e.state.name: seats[e.state.name] for e in quotas}
    return Apportionment(divisor, _apply_floor(seats, method.min_seat_floor), quotas)


def _hamilton(states: tuple[StateProfile, ...], target: int) -> Apportionment:
    total_pop = math.fsum(s.population for s in states)
    divisor = total_pop / target
    quotas = compute_quotas(states, divisor)
    base = {e.state.name: int(math.floor(e.quota)) for e in quotas}
    remaining = target - sum(base.values())
    # largest fractional remainders win; ties by larger population, then name
    order = sorted(quotas, key=lambda e: (-e.fraction, -e.state.population, e.state.name))
    for entry in order[:remaining]:
        base[entry.state.name] += 1
    return Apportionment(divisor, base, quotas)


# --- critical-divisor enumeration -------------------------------------------

_MARK_BISECT_ITERS = 120


def _mark_times_d_crossing(value: float, f: int, rounding, d_lo: float, d_hi: float) -> float | None:
    """D in (d_lo, d_hi) where r(f, D)·D crosses ``value``, if any.

    r(f, D)·D is non-decreasing in D for every rounding regime we
    accept (constant marks trivially; distribution marks by the
    d(rD)/dD >= 0 condition), so the crossing is unique when bracketed.
    """
    g_lo = value - rounding.mark_at(f, d_lo) * d_lo
    g_hi = value - rounding.mark_at(f, d_hi) * d_hi
    if g_lo < 0 or g_hi > 0:
        return None
    lo, hi = d_lo, d_hi
    for _ in range(_MARK_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if value - rounding.mark_at(f, mid) * mid >= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _mark_crossings(value: float, rounding, d_lo: float, d_hi: float,
                    divisor_dependent: bool) -> list[float]:
    """All D in [d_lo, d_hi] where v/D (v = ``value``) meets a mark."""
    out = []
    f_lo = max(0, int(math.floor(value / d_hi)) - 1)
    f_hi = int(math.floor(value / d_lo)) + 1
    for f in range(f_lo, f_hi + 1):
        if divisor_dependent:
            d = _mark_times_d_crossing(value, f, rounding, d_lo, d_hi)
            if d is not None and d_lo <= d <= d_hi:
                out.append(d)
        else:
            r = rounding.mark_at(f, 1.0)
            if r > 0:
                d = value / r
                if d_lo <= d <= d_hi:
                    out.append(d)
    return out


def _boundary_crossings(value: float, d_lo: float, d_hi: float) -> list[float]:
    """All D in [d_lo, d_hi] where v/D (v = ``value``) is an integer."""
    k_lo = max(1, int(math.ceil(value / d_hi)) - 1)
    k_hi = int(math.floor(value / d_lo)) + 1
    out = []
    for k in range(k_lo, k_hi + 1):
        d = value / k
        if d_lo <= d <= d_hi:
            out.append(d)
    return out


def _candidate_divisors(states: tuple[StateProfile, ...], method: MethodSpec,
                        d_lo: float, d_hi: float) -> list[float]:
    """Every D in [d_lo, d_hi] where the apportionment could change."""
    divisor_dependent = bool(getattr(method.rounding, "divisor_dependent", False))
    cands = {d_lo, d_hi}
    boundaries = set()
    for s in states:
        boundaries.update(_boundary_crossings(s.population, d_lo, d_hi))
    cands |= boundaries
    if method.mode == BY_STATE:
        for s in states:
            cands.update(_mark_crossings(s.population, method.rounding,
                                         d_lo, d_hi, divisor_dependent))
    else:
        # family composition is constant between state-boundary crossings;
        # within each stable span, family quotas V_f/D cross marks and integers
        spans = sorted(boundaries | {d_lo, d_hi})
        for a, b in zip(spans, spans[1:]):
            if not (a < b):
                continue
            mid = 0.5 * (a + b)
            volumes: dict[int, float] = {}
            for s in states:
                f = math.floor(s.population / mid)
                volumes[f] = volumes.get(f, 0.0) + s.population
            for vol in volumes.values():
                cands.update(_boundary_crossings(vol, a, b))
                cands.update(_mark_crossings(vol, method.rounding, a, b,
                                             divisor_dependent))
    return sorted(cands)


def piecewise_apportionments(states: Iterable[StateProfile], method: MethodSpec,
                             d_lo: float, d_hi: float,
                             ) -> list[tuple[float, float, Apportionment]]:
    """Constant-apportionment pieces (lo, hi] covering [d_lo, d_hi].

    Pieces are returned in ascending divisor order; each carries the
    apportionment evaluated at its midpoint, which by construction
    equals the value everywhere on the piece including its upper
    endpoint (a quota exactly at a mark rounds the same way as a quota
    just above it).  Adjacent pieces with equal seat vectors are merged.
    """
    if method.is_hamilton:
        raise ApportionmentError("Hamilton's method has no divisor sweep")
    if not (0 < d_lo < d_hi) or not math.isfinite(d_hi):
        raise ValueError(f"need 0 < d_lo < d_hi, got [{d_lo!r}, {d_hi!r}]")
    states = tuple(states)
    cands = _candidate_divisors(states, method, d_lo, d_hi)
    pieces: list[tuple[float, float, Apportionment]] = []
    for a, b in zip(cands, cands[1:]):
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            continue  # interval at float resolution; no interior
        app = apportion_at_divisor(states, mid, method)
        if pieces and pieces[-1][2].seats == app.seats:
            lo, _, prev = pieces[-1]
            pieces[-1] = (lo, b, prev)
        else:
            pieces.append((a, b, app))
    if not pieces:
        # window too narrow to contain any candidate interior: one piece
        app = apportion_at_divisor(states, 0.5 * (d_lo + d_hi), method)
        pieces.append((d_lo, d_hi, app))
    return pieces


def breakpoints(states: Iterable[StateProfile], method: MethodSpec,
                d_lo: float, d_hi: float) -> list[float]:
    """Critical divisors in [d_lo, d_hi]: the D at which seats change.

    Between consecutive returned values the apportionment is constant;
    the apportionment AT a returned divisor equals the one on the piece
    below it (a quota exactly at a mark rounds up, so the change is
    already in effect at the crossing divisor itself).
    """
    pieces = piecewise_apportionments(states, method, d_lo, d_hi)
    return [hi for (_, hi, _), (_, _, _) in zip(pieces, pieces[1:])]


def _forces_one_seat_each(method: MethodSpec) -> bool:
    # state-mode marks with r(0) = 0 give every positive quota a seat
    if method.mode != BY_STATE or method.is_hamilton:
        return False
    try:
        return method.rounding.mark_at(0, 1.0) == 0.0
    except Exception:
        return False


def _search_window(states: tuple[StateProfile, ...], target: int,
                   method: MethodSpec) -> tuple[float, float, bool]:
    """Divisor window provably containing every D with total == target.

    Bound: every state or family rounds within (its quota − 1, quota + 1]
    and the floor adds at most min_seat_floor per state, so
    |total − v_T/D| < n·(1 + floor).  Returns (lo, hi, frozen_above)
    where frozen_above means the apportionment is constant for all
    D > hi, so a solution touching hi extends to infinity.
    """
    n = len(states)
    v_t = math.fsum(s.population for s in states)
    v_max = max(s.population for s in states)
    slack = n * (1 + (method.min_seat_floor or 0)) + 1
    lo = v_t / (target + slack)
    if target - slack >= 1:
        return lo, v_t / (target - slack), False
    # small targets: no finite bound from the quota argument; use the freeze
    # divisor beyond which no further crossing is possible
    divisor_dependent = bool(getattr(method.rounding, "divisor_dependent", False))
    if not divisor_dependent:
        r0 = method.rounding.mark_at(0, 1.0)
        base = v_max if method.mode == BY_STATE else v_t
        hi = (base / r0 if r0 > 0 else base) * (1 + 1e-9)
        return lo, max(hi, lo * 2), True
    # divisor-dependent marks: expand until the total settles at or below target
    hi = max(v_t, 2 * v_max)
    prev_total = None
    for _ in range(80):
        total = apportion_at_divisor(states, hi, method).total_seats
        if total < target or total == prev_total:
            break
        prev_total = total
        hi *= 2
    return lo, hi, True


def apportion_for_house_size(states: Iterable[StateProfile], target_total: int,
                             method: MethodSpec) -> list[Apportionment]:
    """Every distinct apportionment with the requested total seats.

    For divisor-based methods the result lists one entry per distinct
    seat vector achievable at some divisor, ordered by descending
    divisor, each with ``d_interval`` set to the maximal divisor run
    (lo, hi] on which it holds (``math.inf`` upper end when the
    apportionment stays frozen for all larger divisors).  A length-2+
    list is the multiple-solution paradox surfaced, not an error.
    Hamilton returns a single apportionment at D = v_T/target.
    """
    states = tuple(states)
    if target_total < 1:
        raise InfeasibleTarget(f"target house size must be >= 1, got {target_total}")
    n = len(states)
    floor_seats = method.min_seat_floor or 0
    if method.is_hamilton:
        if target_total < n * floor_seats:
            raise InfeasibleTarget(
                f"target {target_total} below the {n * floor_seats}-seat floor")
        app = _hamilton(states, target_total)
        if floor_seats:
            app = replace(app, seats=_apply_floor(app.seats, floor_seats))
            if app.total_seats != target_total:
                raise InfeasibleTarget(
                    "min_seat_floor is incompatible with Hamilton's fixed total")
        return [app]
    per_state_min = max(floor_seats, 1) if _forces_one_seat_each(method) else floor_seats
    forced_min = n * per_state_min
    if target_total < forced_min:
        raise InfeasibleTarget(
            f"target {target_total} infeasible: method forces at least "
            f"{forced_min} seats across {n} states")

    d_lo, d_hi, frozen_above = _search_window(states, target_total, method)
    pieces = piecewise_apportionments(states, method, d_lo, d_hi)

    solutions: list[Apportionment] = []
    seen: dict[tuple[int, ...], int] = {}
    names = [s.name for s in states]
    totals_seen: set[int] = set()
    for idx, (lo, hi, app) in enumerate(pieces):
        totals_seen.add(app.total_seats)
        if app.total_seats != target_total:
            continue
        vec = tuple(app.seats[name] for name in names)
        if vec in seen:
            continue  # same seat vector on a lower disjoint run; keep the top one
        upper = math.inf if (frozen_above and idx == len(pieces) - 1) else hi
        seen[vec] = len(solutions)
        solutions.append(replace(app, d_interval=(lo, upper)))
    if not solutions:
        below = max((t for t in totals_seen if t < target_total), default=None)
        above = min((t for t in totals_seen if t > target_total), default=None)
        raise TargetUnachievable(target_total, below, above)
    solutions.sort(key=lambda a: -a.d_interval[1])
    return solutions
