"""Per-section generation, document assembly, and export.

The document structure is fixed: cover, introduction, objectives (one
general + two specific), field data (outcrop table, rock table, per-outcrop
images/stereogram/joint bars), results, discussion, conclusions, annex A
(per-outcrop RMR sheets), annex B (RMR extremes + classification reference).

Section text comes from the gateway one prompt at a time; two-stage sections
feed the stage-1 output into the stage-2 prompt. Generated paragraphs stay
user-editable; paragraphs over the 100-word guideline get a warning, never a
truncation. Stereograms and bar charts are embedded as data arrays plus a
rendering hint so both the UI and the HTML export can draw them.
"""
from __future__ import annotations

import html as html_mod
import json
import re
from dataclasses import dataclass, field

from .domain import (
    ImageRef,
    ImageRole,
    Outcrop,
    Project,
    RockType,
    SectionKind,
    validate_project,
)
from .errors import AssemblyError, DependencyError, ExportFormatError, FieldValidationError
from .gateway import Gateway, GatewayError, GenerationRequest, MockProvider
from .geomech.charts import joint_bar_data, rmr_extremes
from .geomech.rmr import Groundwater, Infilling, Roughness, Weathering, compute_rmr
from .geomech.schmidt import schmidt_summary
from .geomech.stereonet import joint_set_poles
from .geomech.tables import load_table
from .prompts.engine import PromptCatalog, load_catalog, render_prompt

WORD_LIMIT = 100

# Document order and headings, top to bottom.
DOCUMENT_SEQUENCE: tuple[tuple[str, str], ...] = (
    ("cover", "Portada"),
    ("introduction", "1. Introducción"),
    ("objectives", "2. Objetivos"),
    ("field_data", "3. Datos de campo"),
    ("results", "4. Resultados"),
    ("discussion", "5. Discusión"),
    ("conclusions", "6. Conclusiones"),
    ("annex_a", "Anexo A"),
    ("annex_b", "Anexo B"),
)
HEADINGS = dict(DOCUMENT_SEQUENCE)

ROCK_TYPE_ES = {
    RockType.IGNEOUS: "Ígnea",
    RockType.SEDIMENTARY: "Sedimentaria",
    RockType.METAMORPHIC: "Metamórfica",
}
ROUGHNESS_ES = {
    Roughness.VERY_ROUGH: "Muy rugosa",
    Roughness.ROUGH: "Rugosa",
    Roughness.SLIGHTLY_ROUGH: "Ligeramente rugosa",
    Roughness.SMOOTH: "Lisa",
    Roughness.SLICKENSIDED: "Espejo de falla",
}
INFILLING_ES = {
    Infilling.NONE: "Sin relleno",
    Infilling.HARD_LT5MM: "Relleno duro < 5 mm",
    Infilling.HARD_GT5MM: "Relleno duro > 5 mm",
    Infilling.SOFT_LT5MM: "Relleno blando < 5 mm",
    Infilling.SOFT_GT5MM: "Relleno blando > 5 mm",
}
WEATHERING_ES = {
    Weathering.UNWEATHERED: "Inalterada",
    Weathering.SLIGHTLY: "Ligeramente alterada",
    Weathering.MODERATELY: "Moderadamente alterada",
    Weathering.HIGHLY: "Muy alterada",
    Weathering.DECOMPOSED: "Descompuesta",
}
GROUNDWATER_ES = {
    Groundwater.DRY: "Seco",
    Groundwater.DAMP: "Ligeramente húmedo",
    Groundwater.WET: "Húmedo",
    Groundwater.DRIPPING: "Goteo",
    Groundwater.FLOWING: "Flujo de agua",
}


# ---------------------------------------------------------------------------
# Document model

@dataclass
class Block:
    kind: str  # "paragraph" | "table" | "figure" | "numbered_list"
    text: str = ""
    title: str = ""
    columns: list[str] = field(default_factory=list)
    rows: list[list[str]] = field(default_factory=list)
    items: list[str] = field(default_factory=list)
    figure: dict | None = None

    @classmethod
    def paragraph(cls, text: str) -> "Block":
        return cls(kind="paragraph", text=text)

    @classmethod
    def table(cls, title: str, columns: list[str], rows: list[list[str]]) -> "Block":
        return cls(kind="table", title=title, columns=columns, rows=rows)

    @classmethod
    def numbered(cls, items: list[str]) -> "Block":
        return cls(kind="numbered_list", items=items)

    @classmethod
    def figure_data(cls, title: str, figure: dict) -> "Block":
        return cls(kind="figure", title=title, figure=figure)


@dataclass
class ReportSection:
    kind: str
    heading: str
    blocks: list[Block] = field(default_factory=list)
    editable: bool = False
    warnings: list[str] = field(default_factory=list)


@dataclass
class ReportDocument:
    project_ref: str
    created_at: str
    sections: list[ReportSection] = field(default_factory=list)

    def section(self, kind: str) -> ReportSection | None:
        for sec in self.sections:
            if sec.kind == kind:
                return sec
        return None


def block_to_dict(b: Block) -> dict:
    return {"kind": b.kind, "text": b.text, "title": b.title,
            "columns": list(b.columns), "rows": [list(r) for r in b.rows],
            "items": list(b.items), "figure": b.figure}


def block_from_dict(d: dict) -> Block:
    return Block(kind=d["kind"], text=d.get("text", ""), title=d.get("title", ""),
                 columns=list(d.get("columns", [])),
                 rows=[list(r) for r in d.get("rows", [])],
                 items=list(d.get("items", [])), figure=d.get("figure"))


def document_to_dict(doc: ReportDocument) -> dict:
    return {
        "project_ref": doc.project_ref,
        "created_at": doc.created_at,
        "sections": [
            {"kind": s.kind, "heading": s.heading, "editable": s.editable,
             "warnings": list(s.warnings),
             "blocks": [block_to_dict(b) for b in s.blocks]}
            for s in doc.sections
        ],
    }


def document_from_dict(d: dict) -> ReportDocument:
    return ReportDocument(
        project_ref=d["project_ref"],
        created_at=d["created_at"],
        sections=[
            ReportSection(kind=s["kind"], heading=s["heading"],
                          editable=bool(s.get("editable", False)),
                          warnings=list(s.get("warnings", [])),
                          blocks=[block_from_dict(b) for b in s.get("blocks", [])])
            for s in d.get("sections", [])
        ],
    )


# ---------------------------------------------------------------------------
# Text helpers

def word_count(text: str) -> int:
    return len(text.split())


def split_paragraphs(text: str) -> list[str]:
    parts = re.split(r"\n\s*\n", text.strip())
    return [p.strip() for p in parts if p.strip()]


_NUMBERED_RE = re.compile(r"^\s*\d+\s*[.)-]\s+(.*)$")


def parse_numbered_items(text: str) -> list[str]:
    items: list[str] = []
    for line in text.strip().splitlines():
        match = _NUMBERED_RE.match(line)
        if match:
            items.append(match.group(1).strip())
        elif items and line.strip():
            items[-1] += " " + line.strip()
    return items


def _fmt(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.5f}".rstrip("0").rstrip(".")


def paragraph_warnings(paragraphs: list[str]) -> list[str]:
    out = []
    for i, p in enumerate(paragraphs, start=1):
        n = word_count(p)
        if n > WORD_LIMIT:
            out.append(f"párrafo {i} supera las {WORD_LIMIT} palabras ({n})")
    return out


# ---------------------------------------------------------------------------
# Prompt data blocks (labeled key: value text appended to the section prompts)

def outcrop_data_block(project: Project) -> str:
    lines: list[str] = []
    for oc in sorted(project.outcrops, key=lambda o: o.id):
        x, y, z = oc.coordinates
        lines.append(f"Afloramiento {oc.id}:")
        lines.append(f"  Coordenadas (x, y, z): {_fmt(x)}, {_fmt(y)}, {_fmt(z)}")
        if oc.crs:
            lines.append(f"  Sistema de referencia: {oc.crs}")
        rock = oc.rock
        lines.append(f"  Tipo de roca: {ROCK_TYPE_ES[rock.rock_type]}")
        for label, value in (
            ("Nombre de la roca", rock.rock_name),
            ("Matriz", rock.matrix),
            ("Textura", rock.texture),
            ("Mineralogía", rock.mineralogy),
            ("Tamaño de grano", rock.grain_size),
            ("Color predominante", rock.color),
            ("Geología", rock.geology),
            ("Estructuras principales", rock.main_structures),
            ("Calidad del macizo rocoso", rock.mass_quality),
            ("Descripción de juntas", rock.joint_description),
        ):
            if value:
                lines.append(f"  {label}: {value}")
        if oc.joint_sets:
            sets = "; ".join(
                f"{js.set_label}: {_fmt(js.dip_direction)}/{_fmt(js.dip)}"
                f" ({js.count} medidas)" for js in oc.joint_sets)
            lines.append(f"  Familias de juntas: {sets}")
    return "\n".join(lines)


def schmidt_data_block(outcrop: Outcrop) -> str:
    result = schmidt_summary(outcrop.schmidt)
    return "\n".join([
        f"Método: {outcrop.schmidt.method or 'no especificado'}",
        f"HR promedio 10 mayores: {result.hr_mean_top10:.2f}",
        f"HR mediana 10 mayores: {result.hr_median_top10:.2f}",
        f"Peso específico (kN/m³): {_fmt(outcrop.schmidt.unit_weight_kn_m3)}",
        f"UCS media (MPa): {result.ucs_mean_mpa:.2f}",
        f"UCS mediana (MPa): {result.ucs_median_mpa:.2f}",
        f"Módulo de Young E (MPa): {result.young_modulus_mpa:.2f}",
    ])


def discussion_data_block(project: Project) -> str:
    lines = [outcrop_data_block(project)]
    for oc in sorted(project.outcrops, key=lambda o: o.id):
        result = compute_rmr(oc.rmr_input)
        lines.append(
            f"Afloramiento {oc.id} — RMR básico: {result.basic_total}, "
            f"RMR ajustado: {result.adjusted_total} (Clase {result.rmr_class}, "
            f"{result.class_description})")
        description = oc.generated.get(SectionKind.OUTCROP_DESCRIPTION, "")
        if description:
            lines.append(f"Afloramiento {oc.id} — Descripción: {description}")
        schmidt_text = oc.generated.get(SectionKind.SCHMIDT_INTERPRETATION, "")
        if schmidt_text:
            lines.append(f"Afloramiento {oc.id} — Esclerómetro: {schmidt_text}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Section generation

def _surrogate_loader(image: ImageRef) -> tuple[str, bytes]:
    # Stable stand-in bytes keyed by the storage key; only valid offline.
    return image.media_type, f"surrogate:{image.storage_key}".encode("utf-8")


def generate_section(kind: SectionKind, project: Project, gateway: Gateway,
                     outcrop_id: int | None = None,
                     load_image=None,
                     catalog: PromptCatalog | None = None) -> ReportSection:
    """Generate one section's text and record it on the project/outcrop.

    Raises DependencyError when an upstream output (stage-1 text, image,
    Schmidt sheet, RMR input) is missing; gateway errors propagate with the
    section kind attached.
    """
    violations = validate_project(project)
    if violations:
        first = violations[0]
        raise FieldValidationError(first.path, first.message)

    cat = catalog or load_catalog()
    if load_image is None:
        if isinstance(gateway.provider, MockProvider):
            load_image = _surrogate_loader
        else:
            load_image = _no_loader

    per_outcrop = kind in (SectionKind.OUTCROP_DESCRIPTION,
                           SectionKind.HAND_SAMPLE_DESCRIPTION,
                           SectionKind.SCHMIDT_INTERPRETATION)
    outcrop: Outcrop | None = None
    if per_outcrop:
        if outcrop_id is None:
            raise DependencyError(f"section {kind.value!r} requires an outcrop id")
        outcrop = project.outcrop(outcrop_id)
        if outcrop is None:
            raise DependencyError(f"outcrop {outcrop_id} not found in project")

    context: dict[str, str] = {}
    images: list[ImageRef] = []

    if kind is SectionKind.OBJECTIVES:
        context["title"] = project.title
    elif kind in (SectionKind.INTRODUCTION_STAGE1, SectionKind.CONCLUSIONS):
        context["outcrop_data"] = outcrop_data_block(project)
    elif kind is SectionKind.INTRODUCTION_STAGE2:
        stage1 = project.generated.get(SectionKind.INTRODUCTION_STAGE1, "")
        if not stage1:
            raise DependencyError("introduction_stage2 requires the stage-1 text")
        context["stage1_text"] = stage1
    elif kind is SectionKind.OUTCROP_DESCRIPTION:
        role_images = outcrop.images_with_role(ImageRole.OUTCROP)
        if not role_images:
            raise DependencyError(f"outcrop {outcrop.id} has no outcrop-role image")
        images = [role_images[0]]
    elif kind is SectionKind.HAND_SAMPLE_DESCRIPTION:
        role_images = outcrop.images_with_role(ImageRole.HAND_SAMPLE)
        if not role_images:
            raise DependencyError(f"outcrop {outcrop.id} has no hand-sample image")
        images = [role_images[0]]
    elif kind is SectionKind.SCHMIDT_INTERPRETATION:
        if outcrop.schmidt is None:
            raise DependencyError(f"outcrop {outcrop.id} has no Schmidt hammer sheet")
        context["schmidt_data"] = schmidt_data_block(outcrop)
    elif kind is SectionKind.DISCUSSION_STAGE1:
        gaps = []
        for oc in project.outcrops:
            if oc.rmr_input is None:
                gaps.append(f"outcrop {oc.id}: rmr_input")
            if SectionKind.OUTCROP_DESCRIPTION not in oc.generated:
                gaps.append(f"outcrop {oc.id}: outcrop_description")
        if gaps:
            raise DependencyError("discussion requires results and RMR values; missing: "
                                  + ", ".join(gaps))
        context["outcrop_data"] = discussion_data_block(project)
    elif kind is SectionKind.DISCUSSION_STAGE2:
        stage1 = project.generated.get(SectionKind.DISCUSSION_STAGE1, "")
        if not stage1:
            raise DependencyError("discussion_stage2 requires the stage-1 text")
        context["stage1_text"] = stage1
    else:
        raise DependencyError(f"section kind {kind.value!r} is not generated from a prompt")

    rendered = render_prompt(kind, context=context, images=images, catalog=cat)
    payloads = [load_image(img) for img in images]
    try:
        response = gateway.generate(GenerationRequest(prompt=rendered.text, images=payloads))
    except GatewayError as exc:
        exc.section = kind.value
        raise

    text = response.text.strip()
    if per_outcrop:
        outcrop.generated[kind] = text
    else:
        project.generated[kind] = text

    return _section_from_text(kind, text)


def _no_loader(image: ImageRef) -> tuple[str, bytes]:
    raise DependencyError(
        f"no image loader available to read {image.storage_key!r} for a remote provider")


def _section_from_text(kind: SectionKind, text: str) -> ReportSection:
    if kind is SectionKind.CONCLUSIONS:
        items = parse_numbered_items(text)
        warnings = []
        if not 4 <= len(items) <= 6:
            warnings.append(f"se esperaban de 4 a 6 conclusiones numeradas, hay {len(items)}")
        return ReportSection(kind=kind.value, heading=HEADINGS["conclusions"],
                             blocks=[Block.numbered(items)], editable=True,
                             warnings=warnings)

    paragraphs = split_paragraphs(text)
    warnings = paragraph_warnings(paragraphs)
    if kind is SectionKind.OBJECTIVES and len(paragraphs) != 3:
        warnings.append(
            f"se esperaban 3 párrafos de objetivos (1 general + 2 específicos), hay {len(paragraphs)}")
    heading = {
        SectionKind.OBJECTIVES: HEADINGS["objectives"],
        SectionKind.INTRODUCTION_STAGE1: HEADINGS["introduction"],
        SectionKind.INTRODUCTION_STAGE2: HEADINGS["introduction"],
        SectionKind.DISCUSSION_STAGE1: HEADINGS["discussion"],
        SectionKind.DISCUSSION_STAGE2: HEADINGS["discussion"],
        SectionKind.OUTCROP_DESCRIPTION: HEADINGS["results"],
        SectionKind.HAND_SAMPLE_DESCRIPTION: HEADINGS["results"],
        SectionKind.SCHMIDT_INTERPRETATION: HEADINGS["results"],
    }.get(kind, kind.value)
    return ReportSection(kind=kind.value, heading=heading,
                         blocks=[Block.paragraph(p) for p in paragraphs],
                         editable=True, warnings=warnings)


def run_report(project: Project, gateway: Gateway,
               load_image=None, catalog: PromptCatalog | None = None,
               created_at: str | None = None) -> ReportDocument:
    """Run the full dispatch sequence over the project and assemble the
    document: objectives, introduction (two stages), per-outcrop descriptions,
    discussion (two stages), conclusions."""
    generate_section(SectionKind.OBJECTIVES, project, gateway, catalog=catalog)
    generate_section(SectionKind.INTRODUCTION_STAGE1, project, gateway, catalog=catalog)
    generate_section(SectionKind.INTRODUCTION_STAGE2, project, gateway, catalog=catalog)
    for oc in sorted(project.outcrops, key=lambda o: o.id):
        generate_section(SectionKind.OUTCROP_DESCRIPTION, project, gateway,
                         outcrop_id=oc.id, load_image=load_image, catalog=catalog)
        if oc.images_with_role(ImageRole.HAND_SAMPLE):
            generate_section(SectionKind.HAND_SAMPLE_DESCRIPTION, project, gateway,
                             outcrop_id=oc.id, load_image=load_image, catalog=catalog)
        if oc.schmidt is not None:
            generate_section(SectionKind.SCHMIDT_INTERPRETATION, project, gateway,
                             outcrop_id=oc.id, catalog=catalog)
    generate_section(SectionKind.DISCUSSION_STAGE1, project, gateway, catalog=catalog)
    generate_section(SectionKind.DISCUSSION_STAGE2, project, gateway, catalog=catalog)
    generate_section(SectionKind.CONCLUSIONS, project, gateway, catalog=catalog)
    return assemble_report(project, created_at=created_at)


# ---------------------------------------------------------------------------
# Assembly

MANDATORY_PROJECT_SECTIONS = (
    (SectionKind.OBJECTIVES, "objectives"),
    (SectionKind.INTRODUCTION_STAGE2, "introduction"),
    (SectionKind.DISCUSSION_STAGE2, "discussion"),
    (SectionKind.CONCLUSIONS, "conclusions"),
)


def assemble_report(project: Project, created_at: str | None = None) -> ReportDocument:
    """Assemble the full document in the fixed section order.

    ``created_at`` defaults to the project date so exports are reproducible;
    pass an explicit timestamp to record a generation time.
    """
    missing: list[str] = []
    for kind, name in MANDATORY_PROJECT_SECTIONS:
        if not project.generated.get(kind):
            missing.append(name)
    for oc in project.outcrops:
        if not oc.generated.get(SectionKind.OUTCROP_DESCRIPTION):
            missing.append(f"outcrop {oc.id}: outcrop_description")
        if oc.rmr_input is None:
            missing.append(f"outcrop {oc.id}: rmr_input (annex A)")
    if not project.outcrops:
        missing.append("outcrops")
    if missing:
        raise AssemblyError(missing)

    objectives_paragraphs = split_paragraphs(project.generated[SectionKind.OBJECTIVES])
    if len(objectives_paragraphs) != 3:
        raise AssemblyError(["objectives: expected 1 general + 2 specific paragraphs, "
                             f"got {len(objectives_paragraphs)}"])
    conclusion_items = parse_numbered_items(project.generated[SectionKind.CONCLUSIONS])
    if not 4 <= len(conclusion_items) <= 6:
        raise AssemblyError([f"conclusions: expected 4-6 numbered items, got {len(conclusion_items)}"])

    outcrops = sorted(project.outcrops, key=lambda o: o.id)
    sections = [
        _cover_section(project),
        _text_section("introduction", project.generated[SectionKind.INTRODUCTION_STAGE2]),
        ReportSection(kind="objectives", heading=HEADINGS["objectives"],
                      blocks=[Block.paragraph(p) for p in objectives_paragraphs],
                      editable=True, warnings=paragraph_warnings(objectives_paragraphs)),
        _field_data_section(outcrops),
        _results_section(outcrops),
        _text_section("discussion", project.generated[SectionKind.DISCUSSION_STAGE2]),
        ReportSection(kind="conclusions", heading=HEADINGS["conclusions"],
                      blocks=[Block.numbered(conclusion_items)], editable=True),
        _annex_a_section(outcrops),
        _annex_b_section(outcrops),
    ]
    return ReportDocument(
        project_ref=project.title,
        created_at=created_at or project.date,
        sections=sections,
    )


def _text_section(kind: str, text: str) -> ReportSection:
    paragraphs = split_paragraphs(text)
    return ReportSection(kind=kind, heading=HEADINGS[kind],
                         blocks=[Block.paragraph(p) for p in paragraphs],
                         editable=True, warnings=paragraph_warnings(paragraphs))


def _cover_section(project: Project) -> ReportSection:
    rows = [
        ["Universidad", project.university],
        ["Facultad", project.faculty],
        ["Carrera", project.program],
        ["Asignatura", project.course],
        ["Nombre del informe", "Informe geotécnico de campo para macizos rocosos"],
        ["Nombre del proyecto", project.title],
        ["Ubicación", project.location],
        ["Autores", "; ".join(project.authors)],
        ["Fecha", project.date],
    ]
    return ReportSection(kind="cover", heading=HEADINGS["cover"],
                         blocks=[Block.table("Datos de portada", ["Campo", "Valor"], rows)])


def _field_data_section(outcrops: list[Outcrop]) -> ReportSection:
    blocks = [
        Block.table(
            "3.1 Tabla de afloramientos",
            ["Código", "X", "Y", "Z", "Sistema de referencia"],
            [[str(oc.id), _fmt(oc.coordinates[0]), _fmt(oc.coordinates[1]),
              _fmt(oc.coordinates[2]), oc.crs] for oc in outcrops],
        ),
        Block.table(
            "3.2 Tabla de características de rocas",
            ["Afloramiento", "Tipo de roca", "Nombre", "Matriz", "Textura",
             "Mineralogía", "Tamaño de grano", "Calidad del macizo"],
            [[str(oc.id), ROCK_TYPE_ES[oc.rock.rock_type], oc.rock.rock_name,
              oc.rock.matrix, oc.rock.texture, oc.rock.mineralogy,
              oc.rock.grain_size, oc.rock.mass_quality] for oc in outcrops],
        ),
    ]
    for oc in outcrops:
        for img in oc.images:
            role = "afloramiento" if img.role is ImageRole.OUTCROP else "muestra de mano"
            blocks.append(Block.figure_data(
                f"Afloramiento {oc.id}: imagen de {role}",
                {"chart": "image", "image_id": img.id, "role": img.role.value,
                 "media_type": img.media_type, "storage_key": img.storage_key},
            ))
        poles = joint_set_poles(oc.joint_sets)
        blocks.append(Block.figure_data(
            f"Afloramiento {oc.id}: estereograma de polos",
            {"chart": "stereonet",
             "points": [{"label": p.label, "trend": p.trend, "plunge": p.plunge,
                         "x": p.x, "y": p.y} for p in poles]},
        ))
        bars = joint_bar_data(oc)
        blocks.append(Block.figure_data(
            f"Afloramiento {oc.id}: medidas por familia de juntas",
            {"chart": "bars",
             "bars": [{"label": label, "count": count} for label, count in bars]},
        ))
    return ReportSection(kind="field_data", heading=HEADINGS["field_data"], blocks=blocks)


def _results_section(outcrops: list[Outcrop]) -> ReportSection:
    blocks: list[Block] = []
    warnings: list[str] = []
    for oc in outcrops:
        for kind in (SectionKind.OUTCROP_DESCRIPTION,
                     SectionKind.HAND_SAMPLE_DESCRIPTION,
                     SectionKind.SCHMIDT_INTERPRETATION):
            text = oc.generated.get(kind, "")
            if not text:
                continue
            paragraphs = split_paragraphs(text)
            for w in paragraph_warnings(paragraphs):
                warnings.append(f"afloramiento {oc.id}: {w}")
            blocks.extend(Block.paragraph(p) for p in paragraphs)
    return ReportSection(kind="results", heading=HEADINGS["results"], blocks=blocks,
                         editable=True, warnings=warnings)


_RMR_PARAMETER_LABELS = (
    ("ucs_mpa", "UCS (MPa)"),
    ("rqd_pct", "RQD (%)"),
    ("spacing_m", "Espaciamiento (m)"),
    ("persistence_m", "Continuidad (m)"),
    ("aperture_mm", "Apertura (mm)"),
    ("roughness", "Rugosidad"),
    ("infilling", "Relleno"),
    ("weathering", "Alteración"),
    ("groundwater", "Agua freática"),
)


def _annex_a_section(outcrops: list[Outcrop]) -> ReportSection:
    blocks = []
    for oc in outcrops:
        inp = oc.rmr_input
        result = compute_rmr(inp)
        values = {
            "ucs_mpa": _fmt(inp.ucs_mpa),
            "rqd_pct": _fmt(inp.rqd_pct),
            "spacing_m": _fmt(inp.spacing_m),
            "persistence_m": _fmt(inp.persistence_m),
            "aperture_mm": _fmt(inp.aperture_mm),
            "roughness": ROUGHNESS_ES[inp.roughness],
            "infilling": INFILLING_ES[inp.infilling],
            "weathering": WEATHERING_ES[inp.weathering],
            "groundwater": GROUNDWATER_ES[inp.groundwater],
        }
        rows = [["Número de familias de juntas", str(inp.n_joint_families), "—"]]
        rows += [[label, values[key], str(result.per_parameter_points[key])]
                 for key, label in _RMR_PARAMETER_LABELS]
        rows += [
            ["Condición de las discontinuidades (suma)", "—",
             str(result.per_parameter_points["condition"])],
            ["RMR básico", "—", str(result.basic_total)],
            ["Ajuste por orientación de juntas", "—", str(inp.orientation_adjustment)],
            ["RMR ajustado", "—", str(result.adjusted_total)],
            ["Clase", "—", f"{result.rmr_class} ({result.class_description})"],
        ]
        blocks.append(Block.table(
            f"Clasificación RMR — Afloramiento {oc.id}",
            ["Parámetro", "Valor", "Puntuación"], rows))
    return ReportSection(kind="annex_a", heading=HEADINGS["annex_a"], blocks=blocks)


def _annex_b_section(outcrops: list[Outcrop]) -> ReportSection:
    extremes = rmr_extremes(outcrops)
    totals = {oc.id: compute_rmr(oc.rmr_input).adjusted_total for oc in outcrops}
    stats_rows = [[str(oc_id), str(fams), str(totals[oc_id])]
                  for oc_id, fams in extremes.family_counts]
    summary = (f"RMR mínimo: {extremes.rmr_min} (afloramiento {extremes.rmr_min_outcrop_id}); "
               f"RMR máximo: {extremes.rmr_max} (afloramiento {extremes.rmr_max_outcrop_id}).")
    classes = load_table("rmr89.json")["classes"]
    reference_rows = []
    previous_min = 101
    for band in classes:
        top = previous_min - 1
        reference_rows.append([f"{band['min']}–{top}" if band["min"] < top else str(top),
                               band["label"], band["description"]])
        previous_min = band["min"]
    return ReportSection(
        kind="annex_b", heading=HEADINGS["annex_b"],
        blocks=[
            Block.table("Estadística por afloramiento",
                        ["Afloramiento", "Número de familias de juntas", "RMR ajustado"],
                        stats_rows),
            Block.paragraph(summary),
            Block.table("Tabla de clasificación RMR",
                        ["RMR", "Clase", "Descripción"], reference_rows),
        ])


# ---------------------------------------------------------------------------
# Export

def export(document: ReportDocument, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(document_to_dict(document), ensure_ascii=False,
                           sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "html":
        return export_html(document).encode("utf-8")
    if fmt == "markdown":
        return export_markdown(document).encode("utf-8")
    raise ExportFormatError(f"unknown export format {fmt!r}")


_HTML_STYLE = """
body { font-family: Georgia, 'Times New Roman', serif; margin: 2.5cm auto;
       max-width: 21cm; color: #1a1a1a; line-height: 1.5; }
h1 { font-size: 1.45em; border-bottom: 2px solid #2c3e50; padding-bottom: 0.2em; }
h2 { font-size: 1.15em; color: #2c3e50; }
table { border-collapse: collapse; width: 100%; margin: 1em 0; font-size: 0.92em; }
th, td { border: 1px solid #555; padding: 0.35em 0.6em; text-align: left; }
th { background: #eef2f5; }
caption { caption-side: top; font-weight: bold; text-align: left; padding: 0.3em 0; }
figure { margin: 1.2em 0; text-align: center; }
figcaption { font-size: 0.88em; font-style: italic; margin-top: 0.4em; }
ol li { margin-bottom: 0.6em; }
.image-placeholder { border: 1px dashed #888; padding: 1.6em; color: #555;
                     font-size: 0.88em; }
.warnings { color: #8a5200; font-size: 0.85em; }
@media print {
  body { margin: 0; max-width: none; }
  section.report-section { page-break-after: always; }
  section.report-section:last-child { page-break-after: auto; }
  figure, table { page-break-inside: avoid; }
}
@page { size: A4; margin: 2cm; }
"""


def export_html(document: ReportDocument) -> str:
    out: list[str] = []
    esc = html_mod.escape
    out.append("<!DOCTYPE html>")
    out.append('<html lang="es"><head><meta charset="utf-8">')
    out.append(f"<title>{esc(document.project_ref)}</title>")
    out.append(f"<style>{_HTML_STYLE}</style></head><body>")
    for section in document.sections:
        out.append(f'<section class="report-section" data-kind="{esc(section.kind)}">')
        out.append(f"<h1>{esc(section.heading)}</h1>")
        blocks = section.blocks
        if section.kind == "objectives" and len(blocks) == 3:
            out.append("<h2>2.1 Objetivo general</h2>")
            out.append(_block_html(blocks[0]))
            out.append("<h2>2.2 Objetivos específicos</h2>")
            out.append(_block_html(blocks[1]))
            out.append(_block_html(blocks[2]))
        else:
            out.extend(_block_html(b) for b in blocks)
        if section.warnings:
            items = "".join(f"<li>{esc(w)}</li>" for w in section.warnings)
            out.append(f'<ul class="warnings">{items}</ul>')
        out.append("</section>")
    out.append("</body></html>")
    return "\n".join(out)


def _block_html(block: Block) -> str:
    esc = html_mod.escape
    if block.kind == "paragraph":
        return f"<p>{esc(block.text)}</p>"
    if block.kind == "numbered_list":
        items = "".join(f"<li>{esc(item)}</li>" for item in block.items)
        return f"<ol>{items}</ol>"
    if block.kind == "table":
        head = "".join(f"<th>{esc(c)}</th>" for c in block.columns)
        body = "".join(
            "<tr>" + "".join(f"<td>{esc(cell)}</td>" for cell in row) + "</tr>"
            for row in block.rows)
        return (f"<table><caption>{esc(block.title)}</caption>"
                f"<thead><tr>{head}</tr></thead><tbody>{body}</tbody></table>")
    if block.kind == "figure":
        data = json.dumps(block.figure, ensure_ascii=False, sort_keys=True)
        inner = _figure_svg(block.figure)
        return (f"<figure>{inner}"
                f'<script type="application/json" class="figure-data">{data}</script>'
                f"<figcaption>{esc(block.title)}</figcaption></figure>")
    return ""


def _figure_svg(figure: dict) -> str:
    chart = figure.get("chart")
    if chart == "stereonet":
        return _stereonet_svg(figure.get("points", []))
    if chart == "bars":
        return _bars_svg(figure.get("bars", []))
    if chart == "image":
        key = html_mod.escape(figure.get("storage_key", ""))
        media = html_mod.escape(figure.get("media_type", ""))
        return (f'<div class="image-placeholder">Imagen {media} '
                f"(clave de almacenamiento: {key})</div>")
    return ""


def _stereonet_svg(points: list[dict]) -> str:
    parts = ['<svg viewBox="-120 -120 240 240" width="320" height="320" '
             'xmlns="http://www.w3.org/2000/svg">']
    parts.append('<circle cx="0" cy="0" r="100" fill="none" stroke="#333"/>')
    parts.append('<line x1="-4" y1="0" x2="4" y2="0" stroke="#333"/>')
    parts.append('<line x1="0" y1="-4" x2="0" y2="4" stroke="#333"/>')
    for label, lx, ly, anchor in (("N", 0, -106, "middle"), ("S", 0, 112, "middle"),
                                  ("E", 106, 4, "start"), ("W", -106, 4, "end")):
        parts.append(f'<text x="{lx}" y="{ly}" font-size="10" '
                     f'text-anchor="{anchor}">{label}</text>')
    for p in points:
        cx = round(p["x"] * 100, 2)
        cy = round(-p["y"] * 100, 2)  # SVG y axis points down; north is up
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="#b03030"/>')
        if p.get("label"):
            parts.append(f'<text x="{cx + 5}" y="{cy - 4}" font-size="9">'
                         f"{html_mod.escape(p['label'])}</text>")
    parts.append("</svg>")
    return "".join(parts)


def _bars_svg(bars: list[dict]) -> str:
    if not bars:
        return '<svg viewBox="0 0 200 120" width="240" height="144" ' \
               'xmlns="http://www.w3.org/2000/svg"></svg>'
    max_count = max(b["count"] for b in bars) or 1
    width = max(len(bars) * 50 + 20, 120)
    parts = [f'<svg viewBox="0 0 {width} 140" width="{width}" height="140" '
             'xmlns="http://www.w3.org/2000/svg">']
    for i, bar in enumerate(bars):
        h = round(100 * bar["count"] / max_count, 2)
        x = 20 + i * 50
        parts.append(f'<rect x="{x}" y="{round(110 - h, 2)}" width="30" height="{h}" '
                     'fill="#33658a"/>')
        parts.append(f'<text x="{x + 15}" y="{round(104 - h, 2)}" font-size="10" '
                     f'text-anchor="middle">{bar["count"]}</text>')
        parts.append(f'<text x="{x + 15}" y="124" font-size="10" text-anchor="middle">'
                     f"{html_mod.escape(str(bar['label']))}</text>")
    parts.append("</svg>")
    return "".join(parts)


def export_markdown(document: ReportDocument) -> str:
    out: list[str] = [f"# {document.project_ref}", ""]
    for section in document.sections:
        out.append(f"# {section.heading}")
        out.append("")
        blocks = section.blocks
        if section.kind == "objectives" and len(blocks) == 3:
            out += ["## 2.1 Objetivo general", "", blocks[0].text, "",
                    "## 2.2 Objetivos específicos", "", blocks[1].text, "",
                    blocks[2].text, ""]
            continue
        for block in blocks:
            out.extend(_block_markdown(block))
    return "\n".join(out).rstrip() + "\n"


def _block_markdown(block: Block) -> list[str]:
    if block.kind == "paragraph":
        return [block.text, ""]
    if block.kind == "numbered_list":
        return [f"{i}. {item}" for i, item in enumerate(block.items, start=1)] + [""]
    if block.kind == "table":
        header = "| " + " | ".join(block.columns) + " |"
        divider = "| " + " | ".join("---" for _ in block.columns) + " |"
        rows = ["| " + " | ".join(cell.replace("|", "\\|") for cell in row) + " |"
                for row in block.rows]
        return [f"**{block.title}**", "", header, divider, *rows, ""]
    if block.kind == "figure":
        data = json.dumps(block.figure, ensure_ascii=False, sort_keys=True, indent=2)
        return [f"*Figura: {block.title}*", "", "```json", data, "```", ""]
    return []
