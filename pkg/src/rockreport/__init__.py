"""Geotechnical field-report generator for rock masses."""

__version__ = "0.1.0"

from .domain import (
    ImageRef,
    ImageRole,
    JointSet,
    Outcrop,
    Project,
    RockCharacteristics,
    RockType,
    SectionKind,
    Violation,
    canonical_json,
    project_from_dict,
    project_from_json,
    project_to_dict,
    validate_project,
)

__all__ = [
    "ImageRef",
    "ImageRole",
    "JointSet",
    "Outcrop",
    "Project",
    "RockCharacteristics",
    "RockType",
    "SectionKind",
    "Violation",
    "__version__",
    "canonical_json",
    "project_from_dict",
    "project_from_json",
    "project_to_dict",
    "validate_project",
]
