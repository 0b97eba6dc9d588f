"""Deterministic geomechanics: RMR, SMR, Schmidt hammer, stereonet, charts."""
from .charts import RmrExtremes, joint_bar_data, rmr_extremes
from .rmr import (
    Groundwater,
    Infilling,
    RmrInput,
    RmrResult,
    Roughness,
    Weathering,
    classify_rmr,
    compute_rmr,
    validate_rmr_input,
)
from .schmidt import SchmidtResult, SchmidtTest, rebound_to_ucs, schmidt_summary
from .smr import Excavation, FailureMode, SmrInput, SmrResult, compute_smr
from .stereonet import (
    StereoPoint,
    equal_area_project,
    joint_set_poles,
    pole_of_plane,
    project_pole,
)
from .tables import load_table

__all__ = [
    "Excavation",
    "FailureMode",
    "Groundwater",
    "Infilling",
    "RmrExtremes",
    "RmrInput",
    "RmrResult",
    "Roughness",
    "SchmidtResult",
    "SchmidtTest",
    "SmrInput",
    "SmrResult",
    "StereoPoint",
    "Weathering",
    "classify_rmr",
    "compute_rmr",
    "compute_smr",
    "equal_area_project",
    "joint_bar_data",
    "joint_set_poles",
    "load_table",
    "pole_of_plane",
    "project_pole",
    "rebound_to_ucs",
    "rmr_extremes",
    "schmidt_summary",
    "validate_rmr_input",
]
