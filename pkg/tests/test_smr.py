from __future__ import annotations

import random

import pytest

from rockreport.errors import FieldValidationError
from rockreport.geomech.smr import Excavation, FailureMode, SmrInput, compute_smr

# Independent transcription of the Romana factor tables for the oracle.
F4_ORACLE = {"natural": 15, "presplitting": 10, "smooth_blasting": 8,
             "normal_blasting": 0, "mechanical": 0, "deficient_blasting": -8}


def oracle_f1(parallelism: float) -> float:
    if parallelism >= 30:
        return 0.15
    if parallelism >= 20:
        return 0.4
    if parallelism >= 10:
        return 0.7
    if parallelism >= 5:
        return 0.85
    return 1.0


def oracle_f2_planar(joint_dip: float) -> float:
    if joint_dip <= 20:
        return 0.15
    if joint_dip <= 30:
        return 0.4
    if joint_dip <= 35:
        return 0.7
    if joint_dip <= 45:
        return 0.85
    return 1.0


def oracle_f3_planar(c: float) -> float:
    if c >= 10:
        return 0
    if c > 0:
        return -6
    if c == 0:
        return -25
    if c >= -10:
        return -50
    return -60


def oracle_f3_toppling(c: float) -> float:
    if c <= 110:
        return 0
    if c <= 120:
        return -6
    return -25


def _inp(**kw) -> SmrInput:
    base = dict(rmr_basic=70, joint_dip_direction=0.0, joint_dip=30.0,
                slope_dip_direction=0.0, slope_dip=50.0,
                failure_mode=FailureMode.PLANAR, excavation=Excavation.NORMAL_BLASTING)
    base.update(kw)
    return SmrInput(**base)


def test_zero_product_with_natural_slope_adds_only_f4():
    # strike difference > 30 puts f1 in its minimal band; joint dipping
    # steeper than the slope zeroes f3, so only the excavation term remains
    result = compute_smr(_inp(joint_dip_direction=50.0, slope_dip_direction=10.0,
                              joint_dip=60.0, slope_dip=40.0,
                              excavation=Excavation.NATURAL))
    assert result.f1 == 0.15
    assert result.f3 == 0
    assert result.f1 * result.f2 * result.f3 == 0
    assert result.smr_total == 70 + F4_ORACLE["natural"]


def test_direct_formula_case_68_65():
    # f1=0.15 (parallelism > 30), f2=0.15 (dip < 20), f3=-60 (C < -10), f4=0
    result = compute_smr(_inp(joint_dip_direction=0.0, slope_dip_direction=40.0,
                              joint_dip=15.0, slope_dip=30.0,
                              excavation=Excavation.NORMAL_BLASTING))
    assert (result.f1, result.f2, result.f3, result.f4) == (0.15, 0.15, -60, 0)
    assert result.smr_total == pytest.approx(70 - 1.35)
    assert result.smr_total == pytest.approx(68.65)
    assert result.smr_class == "II"


def test_presplitting_bonus_on_zero_product():
    result = compute_smr(_inp(joint_dip_direction=50.0, slope_dip_direction=10.0,
                              joint_dip=60.0, slope_dip=40.0,
                              excavation=Excavation.PRESPLITTING))
    assert result.f1 * result.f2 * result.f3 == 0
    assert result.smr_total == 80


def test_zero_f4_and_zero_product_returns_rmr_basic():
    result = compute_smr(_inp(joint_dip_direction=50.0, slope_dip_direction=10.0,
                              joint_dip=60.0, slope_dip=40.0,
                              excavation=Excavation.MECHANICAL))
    assert result.smr_total == 70


def test_angle_difference_wraps_around_north():
    # 350 vs 10 degrees is a 20 degree separation, not 340
    result = compute_smr(_inp(joint_dip_direction=350.0, slope_dip_direction=10.0))
    assert result.f1 == oracle_f1(20.0) == 0.4


def test_toppling_uses_anti_dip_parallelism_and_sum_band():
    # joint dips into the slope: dip directions 180 degrees apart -> f1 max band
    result = compute_smr(_inp(failure_mode=FailureMode.TOPPLING,
                              joint_dip_direction=180.0, slope_dip_direction=0.0,
                              joint_dip=70.0, slope_dip=60.0))
    assert result.f1 == 1.0
    assert result.f2 == 1.0
    assert result.f3 == oracle_f3_toppling(130.0) == -25


def test_wedge_mode_applies_planar_bands_to_intersection_line():
    planar = compute_smr(_inp(failure_mode=FailureMode.PLANAR))
    wedge = compute_smr(_inp(failure_mode=FailureMode.WEDGE))
    assert (wedge.f1, wedge.f2, wedge.f3) == (planar.f1, planar.f2, planar.f3)


def test_random_cases_match_factor_table_oracle():
    rng = random.Random(2025)
    for _ in range(2000):
        mode = rng.choice([FailureMode.PLANAR, FailureMode.TOPPLING, FailureMode.WEDGE])
        inp = _inp(rmr_basic=rng.randint(0, 100),
                   joint_dip_direction=rng.uniform(0, 359.99),
                   joint_dip=rng.uniform(0, 90),
                   slope_dip_direction=rng.uniform(0, 359.99),
                   slope_dip=rng.uniform(0, 90),
                   failure_mode=mode,
                   excavation=rng.choice(list(Excavation)))
        result = compute_smr(inp)

        diff = abs(inp.joint_dip_direction - inp.slope_dip_direction) % 360
        parallelism = min(diff, 360 - diff)
        if mode is FailureMode.TOPPLING:
            parallelism = abs(parallelism - 180)
        assert result.f1 == oracle_f1(parallelism)

        if mode is FailureMode.TOPPLING:
            assert result.f2 == 1.0
            assert result.f3 == oracle_f3_toppling(inp.joint_dip + inp.slope_dip)
        else:
            assert result.f2 == oracle_f2_planar(inp.joint_dip)
            assert result.f3 == oracle_f3_planar(inp.joint_dip - inp.slope_dip)

        assert result.f4 == F4_ORACLE[inp.excavation.value]
        expected = inp.rmr_basic + result.f1 * result.f2 * result.f3 + result.f4
        assert result.smr_total == pytest.approx(expected)


@pytest.mark.parametrize("field,value", [
    ("rmr_basic", 101), ("rmr_basic", -1),
    ("joint_dip_direction", 360.0), ("joint_dip", 90.5),
    ("slope_dip_direction", -1.0), ("slope_dip", -0.5),
])
def test_out_of_range_raises_named_error(field, value):
    with pytest.raises(FieldValidationError) as err:
        compute_smr(_inp(**{field: value}))
    assert err.value.field == field
