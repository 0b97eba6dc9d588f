from __future__ import annotations

import copy
import json
from html.parser import HTMLParser

import pytest

from rockreport import pipeline
from rockreport.domain import ImageRole, SectionKind
from rockreport.errors import AssemblyError, DependencyError
from rockreport.gateway import mock_gateway

TABLE1_HEADINGS = ["Portada", "1. Introducción", "2. Objetivos", "3. Datos de campo",
                   "4. Resultados", "5. Discusión", "6. Conclusiones",
                   "Anexo A", "Anexo B"]


class HeadingCollector(HTMLParser):
    def __init__(self):
        super().__init__()
        self.h1: list[str] = []
        self._in_h1 = False

    def handle_starttag(self, tag, attrs):
        if tag == "h1":
            self._in_h1 = True
            self.h1.append("")

    def handle_endtag(self, tag):
        if tag == "h1":
            self._in_h1 = False

    def handle_data(self, data):
        if self._in_h1:
            self.h1[-1] += data


def heading_sequence(html: str) -> list[str]:
    parser = HeadingCollector()
    parser.feed(html)
    return parser.h1


# -- generate_section -----------------------------------------------------------

def test_objectives_produce_one_general_two_specific(demo_project, gateway):
    section = pipeline.generate_section(SectionKind.OBJECTIVES, demo_project, gateway)
    paragraphs = [b for b in section.blocks if b.kind == "paragraph"]
    assert len(paragraphs) == 3
    assert section.editable
    assert demo_project.generated[SectionKind.OBJECTIVES]


def test_introduction_stage2_without_stage1_is_dependency_error(demo_project, gateway):
    with pytest.raises(DependencyError):
        pipeline.generate_section(SectionKind.INTRODUCTION_STAGE2, demo_project, gateway)


def test_outcrop_description_without_outcrop_image_is_dependency_error(demo_project, gateway):
    outcrop = demo_project.outcrop(1)
    outcrop.images = [img for img in outcrop.images
                      if img.role is not ImageRole.OUTCROP]
    with pytest.raises(DependencyError):
        pipeline.generate_section(SectionKind.OUTCROP_DESCRIPTION, demo_project,
                                  gateway, outcrop_id=1)


def test_per_outcrop_kinds_require_outcrop_id(demo_project, gateway):
    with pytest.raises(DependencyError):
        pipeline.generate_section(SectionKind.OUTCROP_DESCRIPTION, demo_project, gateway)
    with pytest.raises(DependencyError):
        pipeline.generate_section(SectionKind.OUTCROP_DESCRIPTION, demo_project,
                                  gateway, outcrop_id=99)


def test_schmidt_interpretation_requires_sheet(demo_project, gateway):
    # outcrop 3 ships without a Schmidt sheet
    with pytest.raises(DependencyError):
        pipeline.generate_section(SectionKind.SCHMIDT_INTERPRETATION, demo_project,
                                  gateway, outcrop_id=3)


def test_discussion_requires_descriptions_and_rmr(demo_project, gateway):
    with pytest.raises(DependencyError) as err:
        pipeline.generate_section(SectionKind.DISCUSSION_STAGE1, demo_project, gateway)
    assert "outcrop_description" in str(err.value)


def test_gateway_errors_carry_section_context(demo_project):
    from rockreport.gateway import Gateway, MockProvider, ProviderConfig, TransientProviderError

    provider = MockProvider(script=[TransientProviderError("boom")] * 10)
    gw = Gateway(config=ProviderConfig(provider_id="mock", max_retries=1),
                 provider=provider, sleep=lambda s: None)
    with pytest.raises(TransientProviderError) as err:
        pipeline.generate_section(SectionKind.OBJECTIVES, demo_project, gw)
    assert err.value.section == "objectives"


def test_word_limit_warning_is_soft(demo_project):
    from rockreport.gateway import Gateway, MockProvider, ProviderConfig

    long_text = "palabra " * 130
    gw = Gateway(config=ProviderConfig(provider_id="mock"),
                 provider=MockProvider(script=[long_text]))
    section = pipeline.generate_section(SectionKind.INTRODUCTION_STAGE1,
                                        demo_project, gw)
    assert any("100 palabras" in w for w in section.warnings)
    # text kept verbatim, never truncated
    assert section.blocks[0].text == long_text.strip()


# -- assembly ------------------------------------------------------------------

def test_full_run_produces_table1_order(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    assert [s.heading for s in document.sections] == TABLE1_HEADINGS
    assert document.created_at == demo_project.date


def test_complete_one_outcrop_project_assembles_all_sections(demo_project, gateway):
    demo_project.outcrops = demo_project.outcrops[:1]
    document = pipeline.run_report(demo_project, gateway)
    assert [s.heading for s in document.sections] == TABLE1_HEADINGS
    annex_a = document.section("annex_a")
    assert len([b for b in annex_a.blocks if b.kind == "table"]) == 1


def test_assembly_error_lists_missing_sections(demo_project, gateway):
    pipeline.generate_section(SectionKind.OBJECTIVES, demo_project, gateway)
    with pytest.raises(AssemblyError) as err:
        pipeline.assemble_report(demo_project)
    assert "conclusions" in err.value.missing
    assert "introduction" in err.value.missing


def test_annex_b_reports_min_max_over_three_outcrops(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    annex_b = document.section("annex_b")
    from rockreport.geomech.charts import rmr_extremes
    extremes = rmr_extremes(demo_project.outcrops)
    summary = next(b for b in annex_b.blocks if b.kind == "paragraph")
    assert f"RMR mínimo: {extremes.rmr_min}" in summary.text
    assert f"RMR máximo: {extremes.rmr_max}" in summary.text
    stats = next(b for b in annex_b.blocks if b.kind == "table")
    assert len(stats.rows) == 3


def test_annex_a_has_one_rmr_table_per_outcrop(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    annex_a = document.section("annex_a")
    tables = [b for b in annex_a.blocks if b.kind == "table"]
    assert len(tables) == 3
    assert tables[0].columns == ["Parámetro", "Valor", "Puntuación"]
    labels = [row[0] for row in tables[0].rows]
    for expected in ("Número de familias de juntas", "UCS (MPa)", "RQD (%)",
                     "Espaciamiento (m)", "Continuidad (m)", "Apertura (mm)",
                     "Rugosidad", "Alteración", "Agua freática", "RMR básico",
                     "RMR ajustado", "Clase"):
        assert expected in labels


def test_field_data_embeds_stereonet_and_bar_arrays(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    field_data = document.section("field_data")
    figures = [b.figure for b in field_data.blocks if b.kind == "figure"]
    charts = [f["chart"] for f in figures]
    assert charts.count("stereonet") == 3
    assert charts.count("bars") == 3
    stereo = next(f for f in figures if f["chart"] == "stereonet")
    assert {"label", "trend", "plunge", "x", "y"} <= set(stereo["points"][0])
    for point in stereo["points"]:
        assert point["x"] ** 2 + point["y"] ** 2 <= 1.0 + 1e-9


# -- export ---------------------------------------------------------------------

def test_json_export_round_trips(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    data = pipeline.export(document, "json")
    assert pipeline.document_from_dict(json.loads(data)) == document


def test_html_heading_sequence_matches_structure(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    html = pipeline.export(document, "html").decode("utf-8")
    assert heading_sequence(html) == TABLE1_HEADINGS
    assert "<style>" in html and "@media print" in html
    assert "http://" not in html.replace("http://www.w3.org", "")  # self-contained


def test_markdown_export_preserves_hierarchy_and_lists(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    md = pipeline.export(document, "markdown").decode("utf-8")
    for heading in TABLE1_HEADINGS:
        assert f"# {heading}" in md
    items = [line for line in md.splitlines()
             if line[:2] in {f"{i}." for i in range(1, 7)}]
    assert 4 <= len(items)


def test_unknown_export_format_rejected(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    from rockreport.errors import ExportFormatError
    with pytest.raises(ExportFormatError):
        pipeline.export(document, "pdf")


def test_editing_a_paragraph_changes_only_that_block(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    before = json.loads(pipeline.export(document, "json"))

    edited = pipeline.document_from_dict(copy.deepcopy(before))
    target = edited.section("discussion")
    target.blocks[0].text = "Párrafo corregido por el usuario."
    after = json.loads(pipeline.export(edited, "json"))

    diffs = []
    for si, (sec_before, sec_after) in enumerate(zip(before["sections"],
                                                     after["sections"])):
        for bi, (block_before, block_after) in enumerate(
                zip(sec_before["blocks"], sec_after["blocks"])):
            if block_before != block_after:
                diffs.append((si, bi))
    assert len(diffs) == 1
    section_index, block_index = diffs[0]
    assert before["sections"][section_index]["kind"] == "discussion"
    assert block_index == 0


def test_conclusions_render_as_numbered_list_of_4_to_6(demo_project, gateway):
    document = pipeline.run_report(demo_project, gateway)
    conclusions = document.section("conclusions")
    numbered = [b for b in conclusions.blocks if b.kind == "numbered_list"]
    assert len(numbered) == 1
    assert 4 <= len(numbered[0].items) <= 6
    html = pipeline.export(document, "html").decode("utf-8")
    assert "<ol>" in html


def test_mock_pipeline_is_deterministic_end_to_end(demo_project, gateway):
    import copy as copy_mod

    project_a = copy_mod.deepcopy(demo_project)
    project_b = copy_mod.deepcopy(demo_project)
    doc_a = pipeline.run_report(project_a, mock_gateway())
    doc_b = pipeline.run_report(project_b, mock_gateway())
    assert pipeline.export(doc_a, "json") == pipeline.export(doc_b, "json")
    assert pipeline.export(doc_a, "html") == pipeline.export(doc_b, "html")
    assert pipeline.export(doc_a, "markdown") == pipeline.export(doc_b, "markdown")
