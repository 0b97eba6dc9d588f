from __future__ import annotations

import pytest

from rockreport.domain import JointSet, Outcrop
from rockreport.errors import EmptyInputError, InsufficientDataError
from rockreport.geomech.charts import joint_bar_data, rmr_extremes
from rockreport.geomech.rmr import RmrInput


def test_no_joint_sets_gives_empty_bars():
    assert joint_bar_data(Outcrop(id=1)) == []


def test_bars_are_identity_projection_in_order():
    outcrop = Outcrop(id=1, joint_sets=[JointSet("J1", 10.0, 20.0, 5),
                                        JointSet("J2", 30.0, 40.0, 3)])
    assert joint_bar_data(outcrop) == [("J1", 5), ("J2", 3)]


def test_duplicate_labels_merge_by_summing_counts():
    outcrop = Outcrop(id=1, joint_sets=[JointSet("J1", 10.0, 20.0, 5),
                                        JointSet("J2", 30.0, 40.0, 2),
                                        JointSet("J1", 15.0, 25.0, 3)])
    bars = joint_bar_data(outcrop)
    # brute-force group-by oracle
    expected: dict[str, int] = {}
    for js in outcrop.joint_sets:
        expected[js.set_label] = expected.get(js.set_label, 0) + js.count
    assert bars == list(expected.items())
    assert dict(bars)["J1"] == 8


def _outcrop_with_rmr(oc_id: int, ucs: float, families: int = 2,
                      adjustment: int = 0) -> Outcrop:
    return Outcrop(id=oc_id, rmr_input=RmrInput(
        n_joint_families=families, ucs_mpa=ucs, rqd_pct=55.0, spacing_m=0.3,
        persistence_m=2.0, aperture_mm=0.05, orientation_adjustment=adjustment))


def test_single_outcrop_min_equals_max():
    result = rmr_extremes([_outcrop_with_rmr(7, 120.0)])
    assert result.rmr_min == result.rmr_max
    assert result.rmr_min_outcrop_id == result.rmr_max_outcrop_id == 7


def test_extremes_found_by_linear_scan():
    from rockreport.geomech.rmr import compute_rmr

    outcrops = [_outcrop_with_rmr(1, 120.0),          # 12 points for UCS
                _outcrop_with_rmr(2, 120.0, adjustment=-25),
                _outcrop_with_rmr(3, 260.0)]          # 15 points for UCS
    result = rmr_extremes(outcrops)
    totals = {oc.id: compute_rmr(oc.rmr_input).adjusted_total for oc in outcrops}
    assert result.rmr_min == min(totals.values())
    assert result.rmr_max == max(totals.values())
    assert result.rmr_min_outcrop_id == 2
    assert result.rmr_max_outcrop_id == 3
    assert result.family_counts == [(1, 2), (2, 2), (3, 2)]


def test_ties_keep_first_outcrop_id():
    result = rmr_extremes([_outcrop_with_rmr(4, 120.0), _outcrop_with_rmr(9, 120.0)])
    assert result.rmr_min == result.rmr_max
    assert result.rmr_min_outcrop_id == 4
    assert result.rmr_max_outcrop_id == 4


def test_empty_list_is_an_error():
    with pytest.raises(EmptyInputError):
        rmr_extremes([])


def test_outcrop_without_rmr_input_is_insufficient():
    with pytest.raises(InsufficientDataError):
        rmr_extremes([Outcrop(id=1)])
