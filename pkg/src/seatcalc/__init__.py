"""Seat apportionment by divisor methods, family-level rounding, and
distribution-matched rounding marks.

The package splits into: exact rounding-mark formulas (:mod:`.signposts`),
quota and family bookkeeping (:mod:`.core`), the apportionment engine with
divisor search (:mod:`.engine`), population distributions and unbiased marks
(:mod:`.distributions`), paradox scanners and worked fixtures
(:mod:`.paradoxes`), census statistics (:mod:`.census`), and the ``seatcalc``
command line (:mod:`.cli`).
"""

from .census import (
    BUNDLED_YEARS,
    LogMoments,
    bundled_census,
    bundled_census_path,
    log_histogram,
    log_moments,
    powerlaw_loglik_scan,
    read_census_csv,
)
from .core import (
    Apportionment,
    Family,
    FamilyPartition,
    QuotaEntry,
    QuotaTable,
    StateProfile,
    compute_quotas,
    partition_families,
)
from .distributions import (
    DistributionMarks,
    FamilyBias,
    ImmunityReport,
    LogNormal,
    PopulationDistribution,
    PowerLaw,
    Uniform,
    expected_family_bias,
    monte_carlo_bias,
    sample_states,
    unbiased_mark,
    verify_alabama_immunity,
)
from .engine import (
    BY_FAMILY,
    BY_STATE,
    HAMILTON,
    ApportionmentError,
    FamilySplit,
    InfeasibleTarget,
    MethodSpec,
    TargetUnachievable,
    apportion_at_divisor,
    apportion_for_house_size,
    breakpoints,
    family_splits,
    piecewise_apportionments,
    round_quota,
)
from .paradoxes import (
    ParadoxReport,
    as_multiple_solution_report,
    check_new_states,
    family_of_families_fixture,
    find_multiple_solutions,
    scan_alabama,
)
from .signposts import (
    ADAMS,
    DEAN,
    HUNTINGTON_HILL,
    JEFFERSON,
    WEBSTER,
    SignpostRule,
    power_law,
    power_law_mark,
    signpost,
    signpost_table,
)

__version__ = "0.1.0"

__all__ = [
    "ADAMS",
    "BUNDLED_YEARS",
    "BY_FAMILY",
    "BY_STATE",
    "Apportionment",
    "ApportionmentError",
    "DEAN",
    "DistributionMarks",
    "Family",
    "FamilyBias",
    "FamilyPartition",
    "FamilySplit",
    "HAMILTON",
    "HUNTINGTON_HILL",
    "ImmunityReport",
    "InfeasibleTarget",
    "JEFFERSON",
    "LogMoments",
    "LogNormal",
    "MethodSpec",
    "ParadoxReport",
    "PopulationDistribution",
    "PowerLaw",
    "QuotaEntry",
    "QuotaTable",
    "SignpostRule",
    "StateProfile",
    "TargetUnachievable",
    "Uniform",
    "WEBSTER",
    "apportion_at_divisor",
    "apportion_for_house_size",
    "as_multiple_solution_report",
    "breakpoints",
    "bundled_census",
    "bundled_census_path",
    "check_new_states",
    "compute_quotas",
    "expected_family_bias",
    "family_of_families_fixture",
    "family_splits",
    "find_multiple_solutions",
    "log_histogram",
    "log_moments",
    "monte_carlo_bias",
    "partition_families",
    "piecewise_apportionments",
    "power_law",
    "power_law_mark",
    "powerlaw_loglik_scan",
    "read_census_csv",
    "round_quota",
    "sample_states",
    "scan_alabama",
    "signpost",
    "signpost_table",
    "unbiased_mark",
    "verify_alabama_immunity",
]
