"""The classical divisor rules sit on one power-law dial.

A divisor method is fixed by its rounding marks r(f): a quota in
[f, f+1] becomes f+1 seats exactly when it reaches r(f). The historical
rules are special cases of the one-parameter family

    r_beta(f) = (((f+1)^(beta+1) - f^(beta+1)) / (beta+1))^(1/beta)

with Adams at beta -> -inf, Huntington-Hill at -2, Dean just off the
curve, Webster at 1, and Jefferson at beta -> +inf. This demo prints
the dial, then shows the distribution-derived marks that replace the
fixed dial when states are drawn from a lognormal population law.
"""

import math

from seatcalc import (
    ADAMS,
    DEAN,
    HUNTINGTON_HILL,
    JEFFERSON,
    WEBSTER,
    LogNormal,
    power_law,
    unbiased_mark,
)


def main():
    named = [("adams", ADAMS), ("dean", DEAN), ("hill", HUNTINGTON_HILL),
             ("webster", WEBSTER), ("jefferson", JEFFERSON)]
    print("named rules, marks r(f):")
    print(f"{'f':>3} " + " ".join(f"{name:>9}" for name, _ in named))
    for f in range(5):
        row = " ".join(f"{rule.mark(f):>9.3f}" for _, rule in named)
        print(f"{f:>3} {row}")

    print("\nthe power-law dial at f = 1 (Adams ... Jefferson):")
    betas = [-math.inf, -4, -2, -1, 0, 1, 2, 4, math.inf]
    for beta in betas:
        tag = {-math.inf: "adams", -2: "hill", 1: "webster",
               math.inf: "jefferson"}.get(beta, "")
        print(f"  beta {beta!s:>5}: r(1) = {power_law(beta).mark(1):.3f}  {tag}")

    print("\nlognormal populations want divisor-dependent marks:")
    print("(sigma = 1; q_g is the geometric-mean quota v_g/D)")
    print(f"{'f':>3} " + " ".join(f"q_g={q_g:>2}" for q_g in (1, 5, 20)))
    for f in (0, 1, 2, 5, 20):
        row = " ".join(f"{unbiased_mark(LogNormal(math.log(q_g), 1.0), f, 1.0):6.3f}"
                       for q_g in (1, 5, 20))
        print(f"{f:>3} {row}")
    print("\nthe f = 0 mark sits far above any fixed rule's, then the "
          "marks settle toward f + 1/2 from below as f grows")


if __name__ == "__main__":
    main()
