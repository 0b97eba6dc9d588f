"""Schmidt hammer rebound statistics and strength correlations."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

from ..errors import FieldValidationError, InsufficientDataError

# Power-law rebound->UCS correlation: ucs = 10^(A * unit_weight * HR + B).
# Coefficients follow the classic Deere-Miller fit with unit weight in kN/m3.
UCS_EXPONENT_SLOPE = 0.00088
UCS_EXPONENT_INTERCEPT = 1.01
DEFAULT_MODULUS_RATIO = 300.0

MIN_READINGS = 10


@dataclass
class SchmidtTest:
    method: str = ""
    readings: list[float] = field(default_factory=list)
    unit_weight_kn_m3: float = 26.0
    modulus_ratio: float = DEFAULT_MODULUS_RATIO


@dataclass
class SchmidtResult:
    hr_mean_top10: float = 0.0
    hr_median_top10: float = 0.0
    ucs_mean_mpa: float = 0.0
    ucs_median_mpa: float = 0.0
    young_modulus_mpa: float = 0.0


def rebound_to_ucs(hr: float, unit_weight_kn_m3: float,
                   slope: float = UCS_EXPONENT_SLOPE,
                   intercept: float = UCS_EXPONENT_INTERCEPT) -> float:
    return 10.0 ** (slope * unit_weight_kn_m3 * hr + intercept)


def schmidt_summary(test: SchmidtTest) -> SchmidtResult:
    """Top-10 rebound statistics plus UCS and Young's modulus estimates.

    The ten largest readings feed the mean/median; UCS comes from the
    configured correlation applied to each statistic, and E = MR * UCS_mean.
    """
    if len(test.readings) < MIN_READINGS:
        raise InsufficientDataError(
            f"need at least {MIN_READINGS} rebound readings, got {len(test.readings)}")
    if not all(math.isfinite(r) and r > 0 for r in test.readings):
        raise FieldValidationError("readings", "rebound values must be finite and > 0")
    if not test.unit_weight_kn_m3 > 0:
        raise FieldValidationError("unit_weight_kn_m3", "must be > 0")
    if not test.modulus_ratio > 0:
        raise FieldValidationError("modulus_ratio", "must be > 0")

    top10 = sorted(test.readings, reverse=True)[:MIN_READINGS]
    hr_mean = statistics.fmean(top10)
    hr_median = float(statistics.median(top10))
    ucs_mean = rebound_to_ucs(hr_mean, test.unit_weight_kn_m3)
    ucs_median = rebound_to_ucs(hr_median, test.unit_weight_kn_m3)
    return SchmidtResult(
        hr_mean_top10=hr_mean,
        hr_median_top10=hr_median,
        ucs_mean_mpa=ucs_mean,
        ucs_median_mpa=ucs_median,
        young_modulus_mpa=test.modulus_ratio * ucs_mean,
    )
