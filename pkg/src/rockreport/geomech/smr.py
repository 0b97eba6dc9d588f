"""Slope Mass Rating: Romana adjustment factors on top of a basic RMR."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ..errors import FieldValidationError
from . import tables


class FailureMode(str, Enum):
    PLANAR = "planar"
    TOPPLING = "toppling"
    WEDGE = "wedge"


class Excavation(str, Enum):
    NATURAL = "natural"
    PRESPLITTING = "presplitting"
    SMOOTH_BLASTING = "smooth_blasting"
    NORMAL_BLASTING = "normal_blasting"
    DEFICIENT_BLASTING = "deficient_blasting"
    MECHANICAL = "mechanical"


@dataclass
class SmrInput:
    """For wedge failure the joint fields hold the intersection line's
    trend/plunge; the planar factor bands then apply."""

    rmr_basic: int = 0
    joint_dip_direction: float = 0.0
    joint_dip: float = 0.0
    slope_dip_direction: float = 0.0
    slope_dip: float = 0.0
    failure_mode: FailureMode = FailureMode.PLANAR
    excavation: Excavation = Excavation.NATURAL


@dataclass
class SmrResult:
    f1: float = 0.0
    f2: float = 0.0
    f3: float = 0.0
    f4: float = 0.0
    smr_total: float = 0.0
    smr_class: str = "V"
    class_description: str = ""


def _angle_between_directions(a: float, b: float) -> float:
    """Smallest angular separation of two azimuths, in [0, 180]."""
    diff = abs(a - b) % 360.0
    return min(diff, 360.0 - diff)


def validate_smr_input(inp: SmrInput) -> list[tuple[str, str]]:
    problems: list[tuple[str, str]] = []
    if not 0 <= inp.rmr_basic <= 100:
        problems.append(("rmr_basic", "must be in [0, 100]"))
    for name in ("joint_dip_direction", "slope_dip_direction"):
        v = getattr(inp, name)
        if not math.isfinite(v) or not 0 <= v < 360:
            problems.append((name, "must be in [0, 360)"))
    for name in ("joint_dip", "slope_dip"):
        v = getattr(inp, name)
        if not math.isfinite(v) or not 0 <= v <= 90:
            problems.append((name, "must be in [0, 90]"))
    if not isinstance(inp.failure_mode, FailureMode):
        problems.append(("failure_mode", "not a valid failure mode"))
    if not isinstance(inp.excavation, Excavation):
        problems.append(("excavation", "not a valid excavation method"))
    return problems


def compute_smr(inp: SmrInput, config: dict | None = None) -> SmrResult:
    """SMR = RMR_basic + f1*f2*f3 + f4, factors from the shipped band tables."""
    problems = validate_smr_input(inp)
    if problems:
        field_name, message = problems[0]
        raise FieldValidationError(field_name, message)

    cfg = config or tables.load_table("smr_romana.json")
    toppling = inp.failure_mode is FailureMode.TOPPLING

    parallelism = _angle_between_directions(inp.joint_dip_direction, inp.slope_dip_direction)
    if toppling:
        # Toppling measures parallelism against the anti-dip direction.
        parallelism = abs(parallelism - 180.0)
    f1 = tables.scan_min_bands(cfg["f1"]["bands"], parallelism)

    if toppling:
        f2 = cfg["f2"]["toppling_value"]
        f3 = tables.scan_max_bands(cfg["f3"]["toppling_bands"], inp.joint_dip + inp.slope_dip)
    else:
        f2 = tables.scan_max_bands(cfg["f2"]["planar_bands"], inp.joint_dip)
        f3 = tables.scan_min_bands(cfg["f3"]["planar_bands"], inp.joint_dip - inp.slope_dip)

    f4 = float(cfg["f4"]["categories"][inp.excavation.value])
    total = inp.rmr_basic + f1 * f2 * f3 + f4
    label, description = tables.classify(cfg["classes"], total)
    return SmrResult(f1=f1, f2=f2, f3=f3, f4=f4, smr_total=total,
                     smr_class=label, class_description=description)
