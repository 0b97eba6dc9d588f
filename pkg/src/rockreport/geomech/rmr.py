"""Rock Mass Rating (1989 edition) scoring and classification."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from ..errors import FieldValidationError
from . import tables


class Roughness(str, Enum):
    VERY_ROUGH = "very_rough"
    ROUGH = "rough"
    SLIGHTLY_ROUGH = "slightly_rough"
    SMOOTH = "smooth"
    SLICKENSIDED = "slickensided"


class Infilling(str, Enum):
    NONE = "none"
    HARD_LT5MM = "hard_lt5mm"
    HARD_GT5MM = "hard_gt5mm"
    SOFT_LT5MM = "soft_lt5mm"
    SOFT_GT5MM = "soft_gt5mm"


class Weathering(str, Enum):
    UNWEATHERED = "unweathered"
    SLIGHTLY = "slightly"
    MODERATELY = "moderately"
    HIGHLY = "highly"
    DECOMPOSED = "decomposed"


class Groundwater(str, Enum):
    DRY = "dry"
    DAMP = "damp"
    WET = "wet"
    DRIPPING = "dripping"
    FLOWING = "flowing"


# The five sub-parameters that make up the discontinuity-condition rating.
CONDITION_FIELDS = ("persistence_m", "aperture_mm", "roughness", "infilling", "weathering")


@dataclass
class RmrInput:
    """Field parameters for one outcrop's RMR sheet.

    ``infilling`` defaults to none (6 points) because the field sheets this
    models often omit it; the standard 0-100 scale needs the sub-parameter.
    """

    n_joint_families: int = 0
    ucs_mpa: float = 0.0
    rqd_pct: float = 0.0
    spacing_m: float = 0.001
    persistence_m: float = 0.0
    aperture_mm: float = 0.0
    roughness: Roughness = Roughness.ROUGH
    infilling: Infilling = Infilling.NONE
    weathering: Weathering = Weathering.UNWEATHERED
    groundwater: Groundwater = Groundwater.DRY
    orientation_adjustment: int = 0


@dataclass
class RmrResult:
    per_parameter_points: dict[str, int] = field(default_factory=dict)
    basic_total: int = 0
    adjusted_total: int = 0
    rmr_class: str = "V"
    class_description: str = ""


def validate_rmr_input(inp: RmrInput) -> list[tuple[str, str]]:
    """Return (field, problem) pairs; empty when the input is in range."""
    problems: list[tuple[str, str]] = []
    if inp.n_joint_families < 0:
        problems.append(("n_joint_families", "must be >= 0"))
    if not math.isfinite(inp.ucs_mpa) or inp.ucs_mpa < 0:
        problems.append(("ucs_mpa", "must be a finite value >= 0"))
    if not math.isfinite(inp.rqd_pct) or not 0 <= inp.rqd_pct <= 100:
        problems.append(("rqd_pct", "must be in [0, 100]"))
    if not math.isfinite(inp.spacing_m) or inp.spacing_m <= 0:
        problems.append(("spacing_m", "must be > 0"))
    if not math.isfinite(inp.persistence_m) or inp.persistence_m < 0:
        problems.append(("persistence_m", "must be >= 0"))
    if not math.isfinite(inp.aperture_mm) or inp.aperture_mm < 0:
        problems.append(("aperture_mm", "must be >= 0"))
    for name, kind in (("roughness", Roughness), ("infilling", Infilling),
                       ("weathering", Weathering), ("groundwater", Groundwater)):
        if not isinstance(getattr(inp, name), kind):
            problems.append((name, f"not a valid {name} value"))
    if not -60 <= inp.orientation_adjustment <= 0:
        problems.append(("orientation_adjustment", "must be in [-60, 0]"))
    return problems


def compute_rmr(inp: RmrInput, config: dict | None = None) -> RmrResult:
    """Score an RMR sheet against the shipped 1989 rating tables.

    basic_total = UCS + RQD + spacing + condition + groundwater points, where
    condition is the sum of the five sub-parameter ratings.
    """
    problems = validate_rmr_input(inp)
    if problems:
        field_name, message = problems[0]
        raise FieldValidationError(field_name, message)

    cfg = config or tables.load_table("rmr89.json")
    params = cfg["parameters"]

    points = {
        "ucs_mpa": tables.numeric_points(params["ucs_mpa"], inp.ucs_mpa),
        "rqd_pct": tables.numeric_points(params["rqd_pct"], inp.rqd_pct),
        "spacing_m": tables.numeric_points(params["spacing_m"], inp.spacing_m),
        "persistence_m": tables.numeric_points(params["persistence_m"], inp.persistence_m),
        "aperture_mm": tables.numeric_points(params["aperture_mm"], inp.aperture_mm),
        "roughness": tables.category_points(params["roughness"], inp.roughness.value),
        "infilling": tables.category_points(params["infilling"], inp.infilling.value),
        "weathering": tables.category_points(params["weathering"], inp.weathering.value),
        "groundwater": tables.category_points(params["groundwater"], inp.groundwater.value),
    }
    points["condition"] = sum(points[f] for f in CONDITION_FIELDS)

    basic = (points["ucs_mpa"] + points["rqd_pct"] + points["spacing_m"]
             + points["condition"] + points["groundwater"])
    adjusted = basic + inp.orientation_adjustment
    label, description = classify_rmr(adjusted, config=cfg)
    return RmrResult(
        per_parameter_points=points,
        basic_total=basic,
        adjusted_total=adjusted,
        rmr_class=label,
        class_description=description,
    )


def classify_rmr(total: int, config: dict | None = None) -> tuple[str, str]:
    """Class bands: 81-100 I, 61-80 II, 41-60 III, 21-40 IV, <=20 V.

    Adjusted totals can dip below zero; they clamp to 0 before classing.
    """
    cfg = config or tables.load_table("rmr89.json")
    return tables.classify(cfg["classes"], total)
