"""Population distributions and distribution-matched (unbiased) marks.

A rounding mark is unbiased for a population distribution when the
expected seats a family receives equal the family's expected quota
under repeated i.i.d. state draws.  With I the population CDF and D the
divisor, the condition for family f is

    I(r·D) = (1/D) * integral of I(v) dv over [f·D, (f+1)·D]

whose right side lies between I(fD) and I((f+1)D), so the mark is found
by bisection on r in [f, f+1].  Power-law densities p(v) ~ v^(beta-1)
give the divisor-independent closed-form marks of the signposts module;
every other distribution (lognormal in particular) yields marks that
move with D, so the induced method is not a homogeneous divisor method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import StateProfile
from .signposts import power_law_mark

__all__ = [
    "PopulationDistribution",
    "PowerLaw",
    "LogNormal",
    "Uniform",
    "DistributionMarks",
    "ImmunityReport",
    "FamilyBias",
    "unbiased_mark",
    "expected_family_bias",
    "verify_alabama_immunity",
    "sample_states",
    "monte_carlo_bias",
]

_SQRT2 = math.sqrt(2.0)


def _phi(z: float) -> float:
    # standard normal CDF via the complementary error function
    return 0.5 * math.erfc(-z / _SQRT2)


def _phi_diff(z_a: float, z_b: float) -> float:
    # Phi(z_b) - Phi(z_a), stable in both tails
    if z_a + z_b > 0:
        return 0.5 * (math.erfc(z_a / _SQRT2) - math.erfc(z_b / _SQRT2))
    return 0.5 * (math.erfc(-z_b / _SQRT2) - math.erfc(-z_a / _SQRT2))


class PopulationDistribution:
    """Base interface: CDF, density, and two stable derived quantities.

    ``cdf_diff(a, b)`` is I(b) − I(a) computed without cancellation and
    ``cdf_integral(a, b)`` is the exact integral of I over [a, b]; the
    mark machinery is built on these so it keeps full precision even
    deep in a distribution's tails.
    """

    kind = "abstract"

    @property
    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def cdf(self, v: float) -> float:
        raise NotImplementedError

    def pdf(self, v: float) -> float:
        raise NotImplementedError

    def cdf_diff(self, a: float, b: float) -> float:
        raise NotImplementedError

    def cdf_integral(self, a: float, b: float) -> float:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class PowerLaw(PopulationDistribution):
    """Density p(v) proportional to v^(beta-1) on [v_lo, v_hi].

    beta = 0 is the log-uniform law (p ~ 1/v).  v_lo = 0 is allowed for
    beta > 0 and v_hi = inf for beta < 0; otherwise both edges must be
    finite for the density to normalize.
    """

    beta: float
    v_lo: float
    v_hi: float

    kind = "powerlaw"

    def __post_init__(self) -> None:
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")
        if not (0 <= self.v_lo < self.v_hi):
            raise ValueError(f"need 0 <= v_lo < v_hi, got [{self.v_lo}, {self.v_hi}]")
        if self.v_lo == 0 and self.beta <= 0:
            raise ValueError("v_lo = 0 requires beta > 0")
        if math.isinf(self.v_hi) and self.beta >= 0:
            raise ValueError("v_hi = inf requires beta < 0")

    @property
    def support(self) -> tuple[float, float]:
        return (self.v_lo, self.v_hi)

    def _pow(self, v: float, e: float) -> float:
        if v == 0:
            return 0.0  # only reached with e > 0
        if math.isinf(v):
            return 0.0  # only reached with e < 0
        return v ** e

    @property
    def _norm(self) -> float:
        # v_hi^beta - v_lo^beta; same sign as beta
        return self._pow(self.v_hi, self.beta) - self._pow(self.v_lo, self.beta)

    def cdf(self, v: float) -> float:
        if v <= self.v_lo:
            return 0.0
        if v >= self.v_hi:
            return 1.0
        if self.beta == 0:
            return math.log(v / self.v_lo) / math.log(self.v_hi / self.v_lo)
        return (self._pow(v, self.beta) - self._pow(self.v_lo, self.beta)) / self._norm

    def pdf(self, v: float) -> float:
        if not (self.v_lo <= v <= self.v_hi) or v <= 0:
            return 0.0
        if self.beta == 0:
            return 1.0 / (v * math.log(self.v_hi / self.v_lo))
        return self.beta * v ** (self.beta - 1.0) / self._norm

    def cdf_diff(self, a: float, b: float) -> float:
        a = min(max(a, self.v_lo), self.v_hi)
        b = min(max(b, self.v_lo), self.v_hi)
        if b <= a:
            return 0.0
        if self.beta == 0:
            return math.log(b / a) / math.log(self.v_hi / self.v_lo)
        if a == 0:
            return self._pow(b, self.beta) / self._norm
        # a^beta * ((b/a)^beta - 1), full relative precision in the tail
        return self._pow(a, self.beta) * math.expm1(self.beta * math.log(b / a)) / self._norm

    def _cdf_antideriv(self, v: float) -> float:
        # antiderivative of I on the interior, up to a constant
        if self.beta == 0:
            return (v * math.log(v / self.v_lo) - v) / math.log(self.v_hi / self.v_lo)
        b1 = self.beta + 1.0
        lo_term = self._pow(self.v_lo, self.beta) * v
        if self.beta == -1.0:
            return (math.log(v) - lo_term) / self._norm
        return (self._pow(v, b1) / b1 - lo_term) / self._norm

    def cdf_integral(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        total = 0.0
        if b > self.v_hi:
            total += b - max(a, self.v_hi)  # I = 1 above the support
        lo = min(max(a, self.v_lo), self.v_hi)
        hi = min(max(b, self.v_lo), self.v_hi)
        if hi > lo:
            total += self._cdf_antideriv(hi) - self._cdf_antideriv(lo)
        return total

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        u = rng.random(n)
        if self.beta == 0:
            return self.v_lo * np.exp(u * math.log(self.v_hi / self.v_lo))
        lo_b = self._pow(self.v_lo, self.beta)
        return (lo_b + u * self._norm) ** (1.0 / self.beta)


@dataclass(frozen=True)
class LogNormal(PopulationDistribution):
    """ln v ~ Normal(log_vg, sigma^2); log_vg is the log of the geometric mean."""

    log_vg: float
    sigma: float

    kind = "lognormal"

    def __post_init__(self) -> None:
        if not (self.sigma > 0) or not math.isfinite(self.sigma):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")
        if not math.isfinite(self.log_vg):
            raise ValueError("log_vg must be finite")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def _z(self, v: float) -> float:
        return (math.log(v) - self.log_vg) / self.sigma

    def cdf(self, v: float) -> float:
        if v <= 0:
            return 0.0
        return _phi(self._z(v))

    def pdf(self, v: float) -> float:
        if v <= 0:
            return 0.0
        z = self._z(v)
        return math.exp(-0.5 * z * z) / (v * self.sigma * math.sqrt(2 * math.pi))

    def cdf_diff(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        if b <= 0:
            return 0.0
        if a <= 0:
            return _phi(self._z(b))
        return _phi_diff(self._z(a), self._z(b))

    def cdf_integral(self, a: float, b: float) -> float:
        # antiderivative of Phi((ln v - mu)/sigma) is
        # v*Phi(z(v)) - v_g*exp(sigma^2/2)*Phi(z(v) - sigma)
        if b <= a:
            return 0.0
        a = max(a, 0.0)
        shift = math.exp(self.log_vg + 0.5 * self.sigma ** 2)

        def anti(v: float) -> float:
            if v <= 0:
                return 0.0
            z = self._z(v)
            return v * _phi(z) - shift * _phi(z - self.sigma)

        return anti(b) - anti(a)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.exp(rng.normal(self.log_vg, self.sigma, size=n))


@dataclass(frozen=True)
class Uniform(PopulationDistribution):
    """Flat density on [v_lo, v_hi]."""

    v_lo: float
    v_hi: float

    kind = "uniform"

    def __post_init__(self) -> None:
        if not (0 <= self.v_lo < self.v_hi) or not math.isfinite(self.v_hi):
            raise ValueError(f"need 0 <= v_lo < v_hi finite, got [{self.v_lo}, {self.v_hi}]")

    @property
    def support(self) -> tuple[float, float]:
        return (self.v_lo, self.v_hi)

    def cdf(self, v: float) -> float:
        if v <= self.v_lo:
            return 0.0
        if v >= self.v_hi:
            return 1.0
        return (v - self.v_lo) / (self.v_hi - self.v_lo)

    def pdf(self, v: float) -> float:
        if self.v_lo <= v <= self.v_hi:
            return 1.0 / (self.v_hi - self.v_lo)
        return 0.0

    def cdf_diff(self, a: float, b: float) -> float:
        a = min(max(a, self.v_lo), self.v_hi)
        b = min(max(b, self.v_lo), self.v_hi)
        return max(b - a, 0.0) / (self.v_hi - self.v_lo)

    def cdf_integral(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        total = 0.0
        if b > self.v_hi:
            total += b - max(a, self.v_hi)
        lo = min(max(a, self.v_lo), self.v_hi)
        hi = min(max(b, self.v_lo), self.v_hi)
        if hi > lo:
            width = self.v_hi - self.v_lo
            anti = lambda v: 0.5 * (v - self.v_lo) ** 2 / width
            total += anti(hi) - anti(lo)
        return total

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.v_lo, self.v_hi, size=n)


# --- the unbiased-mark condition ---------------------------------------------

_MARK_TOL = 1e-12
_MARK_MAX_ITERS = 200
_SIMPSON_MAX_DEPTH = 48


def _adaptive_simpson(fun: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Adaptive Simpson quadrature to absolute tolerance ``tol``."""

    def simpson(x0: float, x2: float, f0: float, f1: float, f2: float) -> float:
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        x1 = 0.5 * (x0 + x2)
        la, lb = 0.5 * (x0 + x1), 0.5 * (x1 + x2)
        fla, flb = fun(la), fun(lb)
        left = simpson(x0, x1, f0, fla, f1)
        right = simpson(x1, x2, f1, flb, f2)
        if depth >= _SIMPSON_MAX_DEPTH or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(x0, x1, f0, fla, f1, left, 0.5 * eps, depth + 1)
                + recurse(x1, x2, f1, flb, f2, right, 0.5 * eps, depth + 1))

    mid = 0.5 * (a + b)
    f0, f1, f2 = fun(a), fun(mid), fun(b)
    return recurse(a, b, f0, f1, f2, simpson(a, b, f0, f1, f2), tol, 0)


def _degenerate_mark(dist: PopulationDistribution, f: int, a: float, b: float) -> float:
    # no mass on (a, b): park the mark per the documented convention
    if dist.cdf(a) >= 1.0:
        return float(f + 1)  # all mass below fD
    if dist.cdf(b) <= 0.0:
        return float(f)      # all mass above (f+1)D
    return f + 0.5


def unbiased_mark(dist: PopulationDistribution, f: int, divisor: float,
                  *, generic: bool = False) -> float:
    """Mark r in [f, f+1] solving I(rD) = (1/D) ∫_{fD}^{(f+1)D} I(v) dv.

    Power laws take the divisor-independent closed form; other
    distributions evaluate the right side exactly (closed-form integral
    of the CDF) and bisect.  ``generic=True`` forces the distribution-
    agnostic path (adaptive Simpson quadrature plus bisection) for any
    distribution, which is how the closed forms are cross-checked.
    """
    if f < 0 or f != int(f):
        raise ValueError(f"family index must be a non-negative integer, got {f}")
    f = int(f)
    if not (divisor > 0) or not math.isfinite(divisor):
        raise ValueError(f"divisor must be positive and finite, got {divisor!r}")
    if not generic and isinstance(dist, PowerLaw):
        return power_law_mark(dist.beta, f)

    a, b = f * divisor, (f + 1) * divisor
    delta = dist.cdf_diff(a, b)
    if delta <= 0.0:
        return _degenerate_mark(dist, f, a, b)

    # work with the interval-normalized CDF J(v) = (I(v) - I(a)) / delta,
    # which satisfies the same fixed-point condition and keeps the
    # bisection well conditioned deep in either tail
    def j_of(v: float) -> float:
        return dist.cdf_diff(a, v) / delta

    if generic:
        rhs = _adaptive_simpson(j_of, a, b, 1e-12 * divisor) / divisor
    else:
        rhs = (dist.cdf_integral(a, b) - divisor * dist.cdf(a)) / (divisor * delta)
    rhs = min(max(rhs, 0.0), 1.0)

    lo, hi = float(f), float(f + 1)
    for _ in range(_MARK_MAX_ITERS):
        if hi - lo <= _MARK_TOL:
            break
        mid = 0.5 * (lo + hi)
        if j_of(mid * divisor) >= rhs:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def expected_family_bias(dist: PopulationDistribution, divisor: float, f: int,
                         mark: float) -> float:
    """Per-draw expected seats minus expected quota for family f.

    Evaluates (1/D) ∫_{fD}^{(f+1)D} I(v) dv − I(mark·D); positive means
    the mark sits low enough that expected seats exceed expected quota.
    """
    if not (f <= mark <= f + 1):
        raise ValueError(f"mark {mark} outside [{f}, {f + 1}]")
    if not (divisor > 0) or not math.isfinite(divisor):
        raise ValueError(f"divisor must be positive and finite, got {divisor!r}")
    a, b = f * divisor, (f + 1) * divisor
    rhs = dist.cdf_integral(a, b) / divisor
    return rhs - dist.cdf(mark * divisor)


@dataclass
class DistributionMarks:
    """Divisor-dependent marks r(f, D), by default the unbiased ones.

    Satisfies the same ``mark_at`` protocol as a signpost rule, so it
    plugs straight into the apportionment engine; results are cached
    per (f, D) because mark solving costs a bisection.
    """

    distribution: PopulationDistribution
    marks: Callable[[int, float], float] | None = None

    #: marks move with the divisor; the engine must root-find crossings
    divisor_dependent = True

    _cache: dict[tuple[int, float], float] = field(default_factory=dict, repr=False)

    def mark_at(self, f: int, divisor: float) -> float:
        key = (f, divisor)
        r = self._cache.get(key)
        if r is None:
            if self.marks is not None:
                r = self.marks(f, divisor)
            else:
                r = unbiased_mark(self.distribution, f, divisor)
            self._cache[key] = r
        return r

    def __str__(self) -> str:
        return f"marks({self.distribution.kind})"


@dataclass(frozen=True)
class ImmunityReport:
    """Finite-difference check that r(f, D)·D never decreases in D.

    A negative slope means the marks move down-ruler faster than the
    population ruler as D falls, which is exactly the opening the
    Alabama paradox needs.
    """

    f: int
    d_grid: tuple[float, ...]
    rd_values: tuple[float, ...]
    slopes: tuple[float, ...]
    violations: tuple[tuple[float, float, float], ...]  # (d_left, d_right, slope)

    @property
    def ok(self) -> bool:
        return not self.violations


_SLOPE_TOL = -1e-8


def verify_alabama_immunity(source, f: int, d_grid) -> ImmunityReport:
    """Check d(r(f,D)·D)/dD >= 0 across a divisor grid.

    ``source`` may be a PopulationDistribution (its unbiased marks are
    used), anything with ``mark_at(f, D)``, or a bare callable
    ``(f, D) -> r``.
    """
    d_grid = tuple(float(d) for d in d_grid)
    if len(d_grid) < 2:
        raise ValueError("need at least two grid divisors")
    if any(d <= 0 for d in d_grid) or any(b <= a for a, b in zip(d_grid, d_grid[1:])):
        raise ValueError("d_grid must be positive and strictly ascending")
    if isinstance(source, PopulationDistribution):
        mark = lambda ff, d: unbiased_mark(source, ff, d)
    elif hasattr(source, "mark_at"):
        mark = source.mark_at
    elif callable(source):
        mark = source
    else:
        raise TypeError("source must be a distribution, marks object, or callable")
    rd = tuple(mark(f, d) * d for d in d_grid)
    slopes = tuple((r2 - r1) / (d2 - d1)
                   for (d1, r1), (d2, r2) in zip(zip(d_grid, rd), zip(d_grid[1:], rd[1:])))
    violations = tuple((d1, d2, s)
                       for d1, d2, s in zip(d_grid, d_grid[1:], slopes) if s < _SLOPE_TOL)
    return ImmunityReport(f, d_grid, rd, slopes, violations)


def sample_states(dist: PopulationDistribution, n: int, seed: int) -> tuple[StateProfile, ...]:
    """n i.i.d. populations from the distribution, deterministic per seed."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    values = dist.sample(rng, n)
    width = len(str(n))
    return tuple(StateProfile(f"s{i + 1:0{width}d}", float(v))
                 for i, v in enumerate(values))


@dataclass(frozen=True)
class FamilyBias:
    """Monte Carlo bias estimate for one family."""

    f: int
    mean_bias: float
    std_error: float


_MC_CHUNK = 4096


def monte_carlo_bias(dist: PopulationDistribution, divisor: float, marks,
                     replications: int, n_states: int, seed: int,
                     ) -> tuple[FamilyBias, ...]:
    """Empirical per-family mean of S_f − Q_f over repeated state draws.

    Each replication draws ``n_states`` populations, rounds every quota
    at the fixed divisor with ``marks`` (a signpost rule, marks object,
    or distribution, whose unbiased marks are then used), and records
    each family's seats-minus-quota total.  Returns the replication
    mean and standard error per family, for every family index up to
    the largest observed.
    """
    if replications < 1:
        raise ValueError("need at least one replication")
    if n_states < 1:
        raise ValueError("need at least one state per replication")
    if not (divisor > 0) or not math.isfinite(divisor):
        raise ValueError(f"divisor must be positive and finite, got {divisor!r}")
    if isinstance(marks, PopulationDistribution):
        marks = DistributionMarks(marks)

    mark_table: list[float] = []

    def marks_up_to(f_max: int) -> np.ndarray:
        while len(mark_table) <= f_max:
            mark_table.append(marks.mark_at(len(mark_table), divisor))
        return np.asarray(mark_table)

    sum_t: np.ndarray = np.zeros(1)
    sum_t2: np.ndarray = np.zeros(1)

    def grow(arr: np.ndarray, size: int) -> np.ndarray:
        if size <= arr.size:
            return arr
        out = np.zeros(size)
        out[: arr.size] = arr
        return out

    master = np.random.SeedSequence(seed)
    n_chunks = (replications + _MC_CHUNK - 1) // _MC_CHUNK
    chunk_seeds = master.spawn(n_chunks)
    done = 0
    for chunk_idx in range(n_chunks):
        reps = min(_MC_CHUNK, replications - done)
        done += reps
        rng = np.random.default_rng(chunk_seeds[chunk_idx])
        v = dist.sample(rng, reps * n_states)
        q = v / divisor
        fam = np.floor(q).astype(np.int64)
        f_max = int(fam.max())
        table = marks_up_to(f_max)
        # same convention as engine.round_quota: integral quotas stand,
        # otherwise a quota at or above the mark rounds up
        seats = fam + ((q > fam) & (q >= table[fam]))
        diff = seats - q
        # per-replication, per-family totals of seats - quota
        width = f_max + 1
        rep_idx = np.repeat(np.arange(reps), n_states)
        flat = np.bincount(rep_idx * width + fam, weights=diff,
                           minlength=reps * width).reshape(reps, width)
        sum_t = grow(sum_t, width)
        sum_t2 = grow(sum_t2, width)
        sum_t[:width] += flat.sum(axis=0)
        sum_t2[:width] += (flat * flat).sum(axis=0)

    r = float(replications)
    out = []
    for f in range(sum_t.size):
        mean = sum_t[f] / r
        if replications > 1:
            var = max(sum_t2[f] - r * mean * mean, 0.0) / (r - 1.0)
            se = math.sqrt(var / r)
        else:
            se = math.nan
        out.append(FamilyBias(f, float(mean), float(se)))
    return tuple(out)
