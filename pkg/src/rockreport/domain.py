"""Field-data model shared by every other module.

Projects hold outcrops; outcrops hold rock characteristics, joint sets,
images, and the optional RMR/Schmidt sheets. Generated section text lives in
``generated`` maps keyed by :class:`SectionKind` (on the outcrop for
per-outcrop sections, on the project for the global ones).

The canonical wire/persistence format is the lower_snake_case JSON produced
by :func:`project_to_dict` / :func:`canonical_json`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import date
from enum import Enum

from .errors import ParseError
from .geomech.rmr import (
    Groundwater,
    Infilling,
    RmrInput,
    Roughness,
    Weathering,
    validate_rmr_input,
)
from .geomech.schmidt import MIN_READINGS, SchmidtTest


class RockType(str, Enum):
    IGNEOUS = "igneous"
    SEDIMENTARY = "sedimentary"
    METAMORPHIC = "metamorphic"


class ImageRole(str, Enum):
    OUTCROP = "outcrop"
    HAND_SAMPLE = "hand_sample"


class SectionKind(str, Enum):
    """Report sections that are generated from prompts.

    Two-stage sections (introduction, discussion) are always rendered in
    stage order; ``preliminary`` is the free-standing image-description
    prompt used for model screening, never part of a report plan.
    """

    OBJECTIVES = "objectives"
    INTRODUCTION_STAGE1 = "introduction_stage1"
    INTRODUCTION_STAGE2 = "introduction_stage2"
    OUTCROP_DESCRIPTION = "outcrop_description"
    HAND_SAMPLE_DESCRIPTION = "hand_sample_description"
    SCHMIDT_INTERPRETATION = "schmidt_interpretation"
    DISCUSSION_STAGE1 = "discussion_stage1"
    DISCUSSION_STAGE2 = "discussion_stage2"
    CONCLUSIONS = "conclusions"
    PRELIMINARY = "preliminary"


# Raster media types accepted for outcrop / hand-sample photographs.
RASTER_MEDIA_TYPES = {
    "image/jpeg",
    "image/png",
    "image/tiff",
    "image/webp",
    "image/bmp",
}


@dataclass
class ImageRef:
    id: str = ""
    role: ImageRole = ImageRole.OUTCROP
    media_type: str = "image/jpeg"
    byte_length: int = 0
    storage_key: str = ""


@dataclass
class JointSet:
    set_label: str = ""
    dip_direction: float = 0.0
    dip: float = 0.0
    count: int = 1


@dataclass
class RockCharacteristics:
    rock_type: RockType = RockType.SEDIMENTARY
    rock_name: str = ""
    matrix: str = ""
    texture: str = ""
    mineralogy: str = ""
    grain_size: str = ""
    color: str = ""
    geology: str = ""
    main_structures: str = ""
    mass_quality: str = ""
    joint_description: str = ""


@dataclass
class Outcrop:
    id: int = 0
    coordinates: tuple[float, float, float] = (0.0, 0.0, 0.0)
    crs: str = ""
    rock: RockCharacteristics = field(default_factory=RockCharacteristics)
    joint_sets: list[JointSet] = field(default_factory=list)
    images: list[ImageRef] = field(default_factory=list)
    rmr_input: RmrInput | None = None
    schmidt: SchmidtTest | None = None
    generated: dict[SectionKind, str] = field(default_factory=dict)

    def images_with_role(self, role: ImageRole) -> list[ImageRef]:
        return [img for img in self.images if img.role is role]


@dataclass
class Project:
    title: str = ""
    location: str = ""
    university: str = ""
    faculty: str = ""
    program: str = ""
    course: str = ""
    authors: list[str] = field(default_factory=list)
    date: str = ""
    outcrops: list[Outcrop] = field(default_factory=list)
    generated: dict[SectionKind, str] = field(default_factory=dict)

    def outcrop(self, outcrop_id: int) -> Outcrop | None:
        for oc in self.outcrops:
            if oc.id == outcrop_id:
                return oc
        return None


@dataclass
class Violation:
    path: str
    message: str


def validate_project(project: Project) -> list[Violation]:
    """Every invariant violation with its field path; empty iff report-ready.

    Violations are data, not errors: drafts are allowed to carry them.
    """
    out: list[Violation] = []

    if not project.title.strip():
        out.append(Violation("title", "title must be non-empty"))
    if not project.authors:
        out.append(Violation("authors", "at least one author is required for the cover"))
    if project.date:
        try:
            date.fromisoformat(project.date)
        except ValueError:
            out.append(Violation("date", "date must be an ISO-8601 date"))
    else:
        out.append(Violation("date", "date is required"))
    if not project.outcrops:
        out.append(Violation("outcrops", "a report needs at least one outcrop"))

    seen_ids: set[int] = set()
    for i, oc in enumerate(project.outcrops):
        prefix = f"outcrops[{i}]"
        if oc.id <= 0:
            out.append(Violation(f"{prefix}.id", "outcrop id must be a positive integer"))
        elif oc.id in seen_ids:
            out.append(Violation(f"{prefix}.id", f"duplicate outcrop id {oc.id}"))
        else:
            seen_ids.add(oc.id)

        if not all(math.isfinite(c) for c in oc.coordinates):
            out.append(Violation(f"{prefix}.coordinates", "coordinates must be finite"))

        if not isinstance(oc.rock.rock_type, RockType):
            out.append(Violation(f"{prefix}.rock.rock_type",
                                 "rock type must be igneous, sedimentary, or metamorphic"))

        for j, js in enumerate(oc.joint_sets):
            jp = f"{prefix}.joint_sets[{j}]"
            if not 0 <= js.dip_direction < 360:
                out.append(Violation(f"{jp}.dip_direction", "must be in [0, 360)"))
            if not 0 <= js.dip <= 90:
                out.append(Violation(f"{jp}.dip", "must be in [0, 90]"))
            if js.count < 1:
                out.append(Violation(f"{jp}.count", "measurement count must be >= 1"))

        for j, img in enumerate(oc.images):
            ip = f"{prefix}.images[{j}]"
            if not isinstance(img.role, ImageRole):
                out.append(Violation(f"{ip}.role", "image role must be outcrop or hand_sample"))
            if img.media_type not in RASTER_MEDIA_TYPES:
                out.append(Violation(f"{ip}.media_type",
                                     f"not a raster image media type: {img.media_type!r}"))
            if img.byte_length <= 0:
                out.append(Violation(f"{ip}.byte_length", "must be > 0"))

        if oc.rmr_input is not None:
            for field_name, message in validate_rmr_input(oc.rmr_input):
                out.append(Violation(f"{prefix}.rmr_input.{field_name}", message))

        if oc.schmidt is not None:
            sp = f"{prefix}.schmidt"
            if len(oc.schmidt.readings) < MIN_READINGS:
                out.append(Violation(f"{sp}.readings",
                                     f"at least {MIN_READINGS} rebound readings required"))
            if not oc.schmidt.unit_weight_kn_m3 > 0:
                out.append(Violation(f"{sp}.unit_weight_kn_m3", "must be > 0"))
            if not oc.schmidt.modulus_ratio > 0:
                out.append(Violation(f"{sp}.modulus_ratio", "must be > 0"))

    return out


# ---------------------------------------------------------------------------
# Canonical JSON serialization (lower_snake_case, sorted keys)

def _rmr_input_to_dict(inp: RmrInput) -> dict:
    return {
        "n_joint_families": inp.n_joint_families,
        "ucs_mpa": inp.ucs_mpa,
        "rqd_pct": inp.rqd_pct,
        "spacing_m": inp.spacing_m,
        "persistence_m": inp.persistence_m,
        "aperture_mm": inp.aperture_mm,
        "roughness": inp.roughness.value,
        "infilling": inp.infilling.value,
        "weathering": inp.weathering.value,
        "groundwater": inp.groundwater.value,
        "orientation_adjustment": inp.orientation_adjustment,
    }


def _rmr_input_from_dict(d: dict) -> RmrInput:
    return RmrInput(
        n_joint_families=int(d["n_joint_families"]),
        ucs_mpa=float(d["ucs_mpa"]),
        rqd_pct=float(d["rqd_pct"]),
        spacing_m=float(d["spacing_m"]),
        persistence_m=float(d["persistence_m"]),
        aperture_mm=float(d["aperture_mm"]),
        roughness=Roughness(d["roughness"]),
        infilling=Infilling(d["infilling"]),
        weathering=Weathering(d["weathering"]),
        groundwater=Groundwater(d["groundwater"]),
        orientation_adjustment=int(d["orientation_adjustment"]),
    )


def _schmidt_to_dict(t: SchmidtTest) -> dict:
    return {
        "method": t.method,
        "readings": list(t.readings),
        "unit_weight_kn_m3": t.unit_weight_kn_m3,
        "modulus_ratio": t.modulus_ratio,
    }


def _schmidt_from_dict(d: dict) -> SchmidtTest:
    return SchmidtTest(
        method=d["method"],
        readings=[float(r) for r in d["readings"]],
        unit_weight_kn_m3=float(d["unit_weight_kn_m3"]),
        modulus_ratio=float(d.get("modulus_ratio", 300.0)),
    )


def outcrop_to_dict(oc: Outcrop) -> dict:
    return {
        "id": oc.id,
        "coordinates": list(oc.coordinates),
        "crs": oc.crs,
        "rock": {
            "rock_type": oc.rock.rock_type.value,
            "rock_name": oc.rock.rock_name,
            "matrix": oc.rock.matrix,
            "texture": oc.rock.texture,
            "mineralogy": oc.rock.mineralogy,
            "grain_size": oc.rock.grain_size,
            "color": oc.rock.color,
            "geology": oc.rock.geology,
            "main_structures": oc.rock.main_structures,
            "mass_quality": oc.rock.mass_quality,
            "joint_description": oc.rock.joint_description,
        },
        "joint_sets": [
            {"set_label": js.set_label, "dip_direction": js.dip_direction,
             "dip": js.dip, "count": js.count}
            for js in oc.joint_sets
        ],
        "images": [
            {"id": img.id, "role": img.role.value, "media_type": img.media_type,
             "byte_length": img.byte_length, "storage_key": img.storage_key}
            for img in oc.images
        ],
        "rmr_input": None if oc.rmr_input is None else _rmr_input_to_dict(oc.rmr_input),
        "schmidt": None if oc.schmidt is None else _schmidt_to_dict(oc.schmidt),
        "generated": {kind.value: text for kind, text in sorted(
            oc.generated.items(), key=lambda kv: kv[0].value)},
    }


def outcrop_from_dict(d: dict) -> Outcrop:
    rock = d.get("rock", {})
    coords = d.get("coordinates", [0.0, 0.0, 0.0])
    return Outcrop(
        id=int(d["id"]),
        coordinates=(float(coords[0]), float(coords[1]), float(coords[2])),
        crs=d.get("crs", ""),
        rock=RockCharacteristics(
            rock_type=RockType(rock.get("rock_type", "sedimentary")),
            rock_name=rock.get("rock_name", ""),
            matrix=rock.get("matrix", ""),
            texture=rock.get("texture", ""),
            mineralogy=rock.get("mineralogy", ""),
            grain_size=rock.get("grain_size", ""),
            color=rock.get("color", ""),
            geology=rock.get("geology", ""),
            main_structures=rock.get("main_structures", ""),
            mass_quality=rock.get("mass_quality", ""),
            joint_description=rock.get("joint_description", ""),
        ),
        joint_sets=[
            JointSet(set_label=js["set_label"], dip_direction=float(js["dip_direction"]),
                     dip=float(js["dip"]), count=int(js["count"]))
            for js in d.get("joint_sets", [])
        ],
        images=[
            ImageRef(id=img["id"], role=ImageRole(img["role"]),
                     media_type=img["media_type"], byte_length=int(img["byte_length"]),
                     storage_key=img.get("storage_key", ""))
            for img in d.get("images", [])
        ],
        rmr_input=None if d.get("rmr_input") is None else _rmr_input_from_dict(d["rmr_input"]),
        schmidt=None if d.get("schmidt") is None else _schmidt_from_dict(d["schmidt"]),
        generated={SectionKind(k): v for k, v in d.get("generated", {}).items()},
    )


def project_to_dict(project: Project) -> dict:
    return {
        "title": project.title,
        "location": project.location,
        "university": project.university,
        "faculty": project.faculty,
        "program": project.program,
        "course": project.course,
        "authors": list(project.authors),
        "date": project.date,
        "outcrops": [outcrop_to_dict(oc) for oc in project.outcrops],
        "generated": {kind.value: text for kind, text in sorted(
            project.generated.items(), key=lambda kv: kv[0].value)},
    }


def project_from_dict(d: dict) -> Project:
    try:
        return Project(
            title=d.get("title", ""),
            location=d.get("location", ""),
            university=d.get("university", ""),
            faculty=d.get("faculty", ""),
            program=d.get("program", ""),
            course=d.get("course", ""),
            authors=[str(a) for a in d.get("authors", [])],
            date=d.get("date", ""),
            outcrops=[outcrop_from_dict(oc) for oc in d.get("outcrops", [])],
            generated={SectionKind(k): v for k, v in d.get("generated", {}).items()},
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError("project", f"malformed project document: {exc}") from exc


def canonical_json(project: Project) -> str:
    return json.dumps(project_to_dict(project), ensure_ascii=False,
                      sort_keys=True, indent=2) + "\n"


def project_from_json(text: str) -> Project:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("project", f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("project", "project document must be a JSON object")
    return project_from_dict(raw)
