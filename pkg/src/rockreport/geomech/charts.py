"""Per-outcrop chart data and cross-outcrop RMR statistics."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from ..errors import EmptyInputError, InsufficientDataError
from .rmr import compute_rmr

if TYPE_CHECKING:
    from ..domain import Outcrop


def joint_bar_data(outcrop: "Outcrop") -> list[tuple[str, int]]:
    """(set_label, measurement count) per joint set; duplicate labels merge
    by summing counts, first-seen order preserved."""
    merged: dict[str, int] = {}
    for js in outcrop.joint_sets:
        merged[js.set_label] = merged.get(js.set_label, 0) + js.count
    return list(merged.items())


@dataclass
class RmrExtremes:
    rmr_min: int = 0
    rmr_min_outcrop_id: int = 0
    rmr_max: int = 0
    rmr_max_outcrop_id: int = 0
    family_counts: list[tuple[int, int]] = field(default_factory=list)


def rmr_extremes(outcrops: Sequence["Outcrop"]) -> RmrExtremes:
    """Min/max adjusted RMR across outcrops with their ids, plus the joint
    family count per outcrop. Ties keep the first outcrop encountered."""
    if not outcrops:
        raise EmptyInputError("no outcrops to summarize")

    totals: list[tuple[int, int, int]] = []  # (outcrop id, adjusted total, families)
    for oc in outcrops:
        if oc.rmr_input is None:
            raise InsufficientDataError(f"outcrop {oc.id} has no RMR input")
        result = compute_rmr(oc.rmr_input)
        totals.append((oc.id, result.adjusted_total, oc.rmr_input.n_joint_families))

    lo_id, lo, _ = totals[0]
    hi_id, hi, _ = totals[0]
    for oc_id, total, _ in totals[1:]:
        if total < lo:
            lo, lo_id = total, oc_id
        if total > hi:
            hi, hi_id = total, oc_id
    return RmrExtremes(
        rmr_min=lo, rmr_min_outcrop_id=lo_id,
        rmr_max=hi, rmr_max_outcrop_id=hi_id,
        family_counts=[(oc_id, fams) for oc_id, _, fams in totals],
    )
