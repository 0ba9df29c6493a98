"""What do state populations actually look like on the log scale?

Sixty years of apportionment populations: the log-population mean
climbs steadily, the spread stays near one natural-log unit, and the
shape is mildly left-skewed and platykurtic rather than normal. Among
integer-exponent power laws p(v) ~ v^(beta-1), the log-uniform law
(beta = 0) fits the 2020 populations best.
"""

import math

from seatcalc import (
    BUNDLED_YEARS,
    bundled_census,
    log_histogram,
    log_moments,
    powerlaw_loglik_scan,
)


def main():
    print("moments of ln(population), fifty states per census:")
    print(f"{'year':>5} {'mean':>7} {'std':>6} {'skew':>7} {'ex.kurt':>8}")
    for year in BUNDLED_YEARS:
        m = log_moments(bundled_census(year))
        print(f"{year:>5} {m.mean:>7.3f} {m.std:>6.3f} {m.skew:>7.3f} "
              f"{m.excess_kurtosis:>8.3f}")

    print("\n2020 log-population histogram (width 0.5):")
    for lo, count in log_histogram(bundled_census(2020), 0.5, 13.0):
        print(f"  [{lo:5.2f}, {lo + 0.5:5.2f})  {'#' * count} {count or ''}")

    print("\ninteger-exponent power-law fit, 2020, support [min, max]:")
    states = bundled_census(2020)
    support = (min(s.population for s in states),
               max(s.population for s in states))
    scan = powerlaw_loglik_scan(states, range(-4, 5), support)
    best = max(scan, key=lambda pair: pair[1])[1]
    for beta, loglik in scan:
        marker = "  <- best (log-uniform)" if loglik == best else ""
        print(f"  beta {beta:>2}: log-likelihood {loglik:>9.2f}{marker}")


if __name__ == "__main__":
    main()
