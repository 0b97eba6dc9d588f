from __future__ import annotations

import json
import math
import random

from rockreport.domain import (
    ImageRef,
    ImageRole,
    JointSet,
    Outcrop,
    Project,
    RockCharacteristics,
    RockType,
    SectionKind,
    canonical_json,
    project_from_dict,
    project_from_json,
    project_to_dict,
    validate_project,
)
from rockreport.geomech.rmr import RmrInput
from rockreport.geomech.schmidt import SchmidtTest


def _minimal_project(**overrides) -> Project:
    base = Project(
        title="Estudio del talud norte",
        location="Quito",
        authors=["A. Pérez"],
        date="2025-01-15",
        outcrops=[Outcrop(id=1, coordinates=(1.0, 2.0, 3.0), crs="WGS84")],
    )
    for key, value in overrides.items():
        setattr(base, key, value)
    return base


def test_empty_title_is_violation():
    project = _minimal_project(title="")
    paths = [v.path for v in validate_project(project)]
    assert "title" in paths


def test_fully_populated_project_has_no_violations(demo_project):
    assert validate_project(demo_project) == []


def test_duplicate_outcrop_ids_reported_at_second_index():
    project = _minimal_project(outcrops=[
        Outcrop(id=3, coordinates=(0.0, 0.0, 0.0)),
        Outcrop(id=3, coordinates=(0.0, 0.0, 0.0)),
    ])
    paths = [v.path for v in validate_project(project)]
    assert "outcrops[1].id" in paths
    assert "outcrops[0].id" not in paths


def test_missing_authors_and_empty_outcrops_flagged():
    project = _minimal_project(authors=[], outcrops=[])
    paths = [v.path for v in validate_project(project)]
    assert "authors" in paths
    assert "outcrops" in paths


def test_bad_date_flagged():
    project = _minimal_project(date="14/06/2025")
    assert any(v.path == "date" for v in validate_project(project))


def test_nonfinite_coordinates_flagged():
    project = _minimal_project(outcrops=[
        Outcrop(id=1, coordinates=(math.nan, 0.0, 0.0))])
    assert any(v.path == "outcrops[0].coordinates" for v in validate_project(project))


def test_joint_set_angle_ranges():
    project = _minimal_project(outcrops=[
        Outcrop(id=1, joint_sets=[JointSet("J1", 360.0, 91.0, 0)])])
    paths = [v.path for v in validate_project(project)]
    assert "outcrops[0].joint_sets[0].dip_direction" in paths
    assert "outcrops[0].joint_sets[0].dip" in paths
    assert "outcrops[0].joint_sets[0].count" in paths


def test_image_invariants():
    bad = ImageRef(id="x", role=ImageRole.OUTCROP, media_type="image/svg+xml",
                   byte_length=0, storage_key="k")
    project = _minimal_project(outcrops=[Outcrop(id=1, images=[bad])])
    paths = [v.path for v in validate_project(project)]
    assert "outcrops[0].images[0].media_type" in paths
    assert "outcrops[0].images[0].byte_length" in paths


def test_schmidt_below_ten_readings_flagged():
    project = _minimal_project(outcrops=[
        Outcrop(id=1, schmidt=SchmidtTest(readings=[30.0] * 9, unit_weight_kn_m3=26.0))])
    assert any(v.path == "outcrops[0].schmidt.readings"
               for v in validate_project(project))


def test_rmr_input_violations_carry_field_path():
    project = _minimal_project(outcrops=[
        Outcrop(id=1, rmr_input=RmrInput(ucs_mpa=-1.0))])
    assert any(v.path == "outcrops[0].rmr_input.ucs_mpa"
               for v in validate_project(project))


def test_validate_is_pure_and_idempotent(demo_project):
    first = validate_project(demo_project)
    second = validate_project(demo_project)
    assert first == second == []
    broken = _minimal_project(title="")
    assert validate_project(broken) == validate_project(broken)


def test_accepted_project_roundtrips_losslessly(demo_project):
    assert validate_project(demo_project) == []
    redone = project_from_dict(project_to_dict(demo_project))
    assert redone == demo_project
    again = project_from_json(canonical_json(demo_project))
    assert again == demo_project


def test_canonical_json_is_stable(demo_project):
    assert canonical_json(demo_project) == canonical_json(demo_project)


def test_generated_map_roundtrips():
    project = _minimal_project()
    project.generated[SectionKind.OBJECTIVES] = "texto"
    project.outcrops[0].generated[SectionKind.OUTCROP_DESCRIPTION] = "descripción"
    redone = project_from_dict(project_to_dict(project))
    assert redone.generated[SectionKind.OBJECTIVES] == "texto"
    assert redone.outcrops[0].generated[SectionKind.OUTCROP_DESCRIPTION] == "descripción"


def test_random_projects_roundtrip():
    rng = random.Random(99)
    rock_types = list(RockType)
    for _ in range(25):
        outcrops = []
        for oid in range(1, rng.randint(2, 4)):
            outcrops.append(Outcrop(
                id=oid,
                coordinates=(rng.uniform(-1e6, 1e6), rng.uniform(-1e7, 1e7),
                             rng.uniform(0, 6000)),
                crs="EPSG:32717",
                rock=RockCharacteristics(rock_type=rng.choice(rock_types),
                                         color="gris", mineralogy="cuarzo"),
                joint_sets=[JointSet(f"J{k}", rng.uniform(0, 359.9),
                                     rng.uniform(0, 90), rng.randint(1, 9))
                            for k in range(rng.randint(0, 3))],
            ))
        project = Project(title="p", location="l", authors=["a"],
                          date="2024-02-29", outcrops=outcrops)
        data = json.loads(canonical_json(project))
        assert project_from_dict(data) == project
