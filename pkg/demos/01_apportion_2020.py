"""Apportion the 2020 census two ways and show where they disagree.

Webster's rule rounds each quota v/D at the half mark. Applied per
state, large deviations inside a crowded integer band can push the
house total around; applied per family (all states sharing the integer
part of their quota), the family subtotal is rounded first and members
then split the family's seats by population rank. This demo solves a
435-seat house both ways on the bundled 2020 apportionment populations
and prints every state whose seat count moves.
"""

import math

from seatcalc import (
    BY_FAMILY,
    BY_STATE,
    WEBSTER,
    MethodSpec,
    apportion_for_house_size,
    bundled_census,
    compute_quotas,
    partition_families,
)


def main():
    states = bundled_census(2020)
    v_t = math.fsum(s.population for s in states)
    divisor = v_t / 435

    by_state = apportion_for_house_size(states, 435, MethodSpec(WEBSTER, BY_STATE))[0]
    by_family = apportion_for_house_size(states, 435, MethodSpec(WEBSTER, BY_FAMILY))[0]

    print("2020 apportionment populations, 435 seats, Webster rounding")
    print(f"total population {v_t:,.0f}; quotas shown at divisor v_T/435 = {divisor:,.1f}")
    print()

    entries = compute_quotas(states, divisor)
    moved = [e for e in sorted(entries, key=lambda e: e.quota)
             if by_state.seats[e.state.name] != by_family.seats[e.state.name]]

    print(f"{'state':<16} {'quota':>7} {'statewise':>9} {'familywise':>10}")
    for e in moved:
        print(f"{e.state.name:<16} {e.quota:>7.3f} "
              f"{by_state.seats[e.state.name]:>9} "
              f"{by_family.seats[e.state.name]:>10}")
    print(f"\n{len(moved)} of 50 states change seats between the modes; "
          f"totals {by_state.total_seats} and {by_family.total_seats}")

    print("\nfamily subtotals where the modes differ:")
    print(f"{'family':>6} {'members':>7} {'Q_f':>8} {'statewise':>9} {'familywise':>10}")
    for fam in partition_families(entries):
        s_state = sum(by_state.seats[m.state.name] for m in fam.members)
        s_family = sum(by_family.seats[m.state.name] for m in fam.members)
        if s_state != s_family:
            print(f"{fam.index:>6} {fam.size:>7} {fam.quota:>8.3f} "
                  f"{s_state:>9} {s_family:>10}")
    print("\nfamilywise rounding keeps each family within one seat of its "
          "quota; statewise rounding lets crowded families drift further")


if __name__ == "__main__":
    main()
