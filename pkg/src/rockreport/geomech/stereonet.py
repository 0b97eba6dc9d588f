"""Lower-hemisphere equal-area (Schmidt net) projection of plane poles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from ..errors import FieldValidationError

if TYPE_CHECKING:
    from ..domain import JointSet


@dataclass
class StereoPoint:
    trend: float
    plunge: float
    x: float
    y: float
    label: str = ""


def pole_of_plane(dip_direction: float, dip: float) -> tuple[float, float]:
    """Pole (normal) of a plane given as dip direction / dip."""
    if not 0 <= dip_direction < 360:
        raise FieldValidationError("dip_direction", "must be in [0, 360)")
    if not 0 <= dip <= 90:
        raise FieldValidationError("dip", "must be in [0, 90]")
    return (dip_direction + 180.0) % 360.0, 90.0 - dip


def equal_area_project(trend: float, plunge: float) -> tuple[float, float]:
    """Unit-disc coordinates of a line; r = sqrt(2)*sin((90-plunge)/2).

    The sqrt(2) factor normalizes the net so a horizontal line (plunge 0)
    lands exactly on the primitive circle (r = 1). North is +y, trend is
    measured clockwise from north.
    """
    if not 0 <= plunge <= 90:
        raise FieldValidationError("plunge", "must be in [0, 90]")
    r = math.sqrt(2.0) * math.sin(math.radians(90.0 - plunge) / 2.0)
    t = math.radians(trend)
    # + 0.0 folds IEEE negative zero into plain zero at the net center
    return r * math.sin(t) + 0.0, r * math.cos(t) + 0.0


def project_pole(dip_direction: float, dip: float, label: str = "") -> StereoPoint:
    trend, plunge = pole_of_plane(dip_direction, dip)
    x, y = equal_area_project(trend, plunge)
    return StereoPoint(trend=trend, plunge=plunge, x=x, y=y, label=label)


def joint_set_poles(joint_sets: Iterable["JointSet"]) -> list[StereoPoint]:
    """One projected pole per joint set, order preserved."""
    return [project_pole(js.dip_direction, js.dip, label=js.set_label)
            for js in joint_sets]
