"""Rounding-mark (signpost) functions for divisor methods.

A signpost rule places a mark ``r(f)`` in each integer interval
``[f, f+1]`` of the seats scale.  A quota below the mark rounds down to
``f`` seats, a quota at or above it rounds up to ``f+1``.  The classic
methods (Adams, Dean, Huntington-Hill, Webster, Jefferson) are special
cases; the one-parameter power-law family ``r_beta`` interpolates
between them, with ``beta = -inf`` giving Adams, ``-2`` Huntington-Hill,
``+1`` Webster and ``+inf`` Jefferson.  Dean's harmonic-mean mark is not
a power law and is kept as its own kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SignpostRule",
    "power_law",
    "power_law_mark",
    "signpost",
    "signpost_table",
    "ADAMS",
    "DEAN",
    "HUNTINGTON_HILL",
    "WEBSTER",
    "JEFFERSON",
]

# Guard bands around the removable singularities of the generic power-law
# expression, and the cutoff beyond which beta is treated as +-infinity.
_BETA_ZERO_BAND = 1e-9
_BETA_NEG1_BAND = 1e-9
_BETA_INF_CUTOFF = 1e9


def _mark_beta_zero(f: int) -> float:
    # r_0(f) = (f+1)^(f+1) / (e * f^f), in log space: overflows past f ~ 140 otherwise
    if f == 0:
        return 1.0 / math.e
    return math.exp((f + 1) * math.log(f + 1) - f * math.log(f) - 1.0)


def _mark_beta_neg1(f: int) -> float:
    # r_-1(f) = 1 / (log(f+1) - log(f)); the f = 0 limit is 0
    if f == 0:
        return 0.0
    return 1.0 / math.log1p(1.0 / f)


def power_law_mark(beta: float, f: int) -> float:
    """Mark of the power-law rule with exponent ``beta`` at interval ``f``.

    ``beta`` may be any extended real including ``+-math.inf``; limit
    formulas are substituted inside narrow guard bands around the
    removable singularities at 0 and -1.
    """
    if f < 0:
        raise ValueError(f"family index must be >= 0, got {f}")
    if beta <= -_BETA_INF_CUTOFF:
        return float(f)
    if beta >= _BETA_INF_CUTOFF:
        return float(f + 1)
    if abs(beta) < _BETA_ZERO_BAND:
        return _mark_beta_zero(f)
    if abs(beta + 1.0) < _BETA_NEG1_BAND:
        return _mark_beta_neg1(f)
    # exact member formulas (geometric mean, arithmetic mean, rms-like)
    if beta == -2.0:
        return math.sqrt(f * (f + 1.0))
    if beta == 1.0:
        return f + 0.5
    if beta == 2.0:
        return math.sqrt(f * (f + 1.0) + 1.0 / 3.0)
    if f == 0:
        if beta <= -1.0:
            return 0.0
        # ((1 - 0) / (beta+1)) ** (1/beta)
        return math.exp(-math.log(beta + 1.0) / beta)
    # log-space evaluation of (((f+1)^(b+1) - f^(b+1)) / (b+1)) ** (1/b);
    # the expm1 factoring keeps it stable for large f and extreme beta
    b1 = beta + 1.0
    diff = math.expm1(b1 * math.log1p(1.0 / f))  # (1+1/f)^(b+1) - 1, sign of b1
    log_expr = b1 * math.log(f) + math.log(abs(diff)) - math.log(abs(b1))
    return math.exp(log_expr / beta)


def _mark_dean(f: int) -> float:
    # harmonic mean of f and f+1
    return f * (f + 1) / (f + 0.5)


def _mark_hill(f: int) -> float:
    # geometric mean of f and f+1
    return math.sqrt(f * (f + 1.0))


@dataclass(frozen=True)
class SignpostRule:
    """A rounding regime defined purely by its marks ``r(f)``.

    ``kind`` is one of ``adams``, ``dean``, ``hill``, ``webster``,
    ``jefferson`` or ``powerlaw`` (the latter carries ``beta``).
    Marks depend only on the family index, never on the divisor, which is
    what makes these rules homogeneous divisor methods.
    """

    kind: str
    beta: float | None = None

    #: marks never move with the divisor for signpost rules
    divisor_dependent = False

    def __post_init__(self) -> None:
        if self.kind not in ("adams", "dean", "hill", "webster", "jefferson", "powerlaw"):
            raise ValueError(f"unknown signpost kind {self.kind!r}")
        if self.kind == "powerlaw" and self.beta is None:
            raise ValueError("powerlaw rule requires beta")

    def mark(self, f: int) -> float:
        """Mark r(f) in [f, f+1]."""
        if f < 0:
            raise ValueError(f"family index must be >= 0, got {f}")
        if self.kind == "adams":
            return float(f)
        if self.kind == "dean":
            return _mark_dean(f)
        if self.kind == "hill":
            return _mark_hill(f)
        if self.kind == "webster":
            return f + 0.5
        if self.kind == "jefferson":
            return float(f + 1)
        return power_law_mark(self.beta, f)

    def mark_at(self, f: int, divisor: float) -> float:
        """Mark r(f, D); the divisor is ignored for signpost rules."""
        return self.mark(f)

    def __str__(self) -> str:
        if self.kind == "powerlaw":
            return f"powerlaw:{self.beta:g}"
        return self.kind


ADAMS = SignpostRule("adams")
DEAN = SignpostRule("dean")
HUNTINGTON_HILL = SignpostRule("hill")
WEBSTER = SignpostRule("webster")
JEFFERSON = SignpostRule("jefferson")


def power_law(beta: float) -> SignpostRule:
    """Power-law rule with exponent ``beta`` (any extended real)."""
    return SignpostRule("powerlaw", float(beta))


def signpost(rule: SignpostRule, f: int) -> float:
    """Evaluate ``rule``'s mark at family index ``f``."""
    return rule.mark(f)


def signpost_table(rule: SignpostRule, f_max: int) -> list[tuple[int, float]]:
    """Rows ``(f, r(f))`` for f = 0 .. f_max."""
    if f_max < 0:
        raise ValueError(f"f_max must be >= 0, got {f_max}")
    return [(f, rule.mark(f)) for f in range(f_max + 1)]
