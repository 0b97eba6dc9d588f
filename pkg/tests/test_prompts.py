from __future__ import annotations

import re
from pathlib import Path

import pytest

from rockreport.domain import ImageRef, ImageRole, SectionKind
from rockreport.errors import ImageAttachmentError, MissingSlotError, SequencingError
from rockreport.prompts import (
    SECTION_ORDER,
    RenderedPrompt,
    compose_final,
    load_catalog,
    render_preliminary,
    render_prompt,
)

GOLDEN = Path(__file__).parent / "data" / "golden_prompts"

# Slot values used by the golden files.
GOLDEN_CONTEXT = {
    "title": "Caracterización geotécnica del sector X",
    "outcrop_data": "Afloramiento 1:\n  Tipo de roca: Ígnea",
    "stage1_text": "Texto preliminar de la sección.",
    "schmidt_data": "Método: N\nHR promedio 10 mayores: 40.00",
}

IMG = ImageRef(id="img-1", role=ImageRole.OUTCROP, media_type="image/jpeg",
               byte_length=1024, storage_key="k1")
HAND_IMG = ImageRef(id="img-2", role=ImageRole.HAND_SAMPLE, media_type="image/jpeg",
                    byte_length=1024, storage_key="k2")


def golden(kind: SectionKind) -> str:
    text = (GOLDEN / f"{kind.value}.txt").read_text(encoding="utf-8")
    return text[:-1] if text.endswith("\n") else text


@pytest.mark.parametrize("kind,images", [
    (SectionKind.OBJECTIVES, []),
    (SectionKind.INTRODUCTION_STAGE1, []),
    (SectionKind.INTRODUCTION_STAGE2, []),
    (SectionKind.OUTCROP_DESCRIPTION, [IMG]),
    (SectionKind.HAND_SAMPLE_DESCRIPTION, [HAND_IMG]),
    (SectionKind.SCHMIDT_INTERPRETATION, []),
    (SectionKind.DISCUSSION_STAGE1, []),
    (SectionKind.DISCUSSION_STAGE2, []),
    (SectionKind.CONCLUSIONS, []),
])
def test_rendered_prompts_match_golden_files(kind, images):
    rendered = render_prompt(kind, context=GOLDEN_CONTEXT, images=images)
    assert rendered.text == golden(kind)


def test_objectives_begins_with_role_and_contains_title():
    rendered = render_prompt(SectionKind.OBJECTIVES, context=GOLDEN_CONTEXT)
    assert rendered.text.startswith("Eres un redactor técnico")
    assert "Caracterización geotécnica del sector X" in rendered.text


def test_outcrop_prompt_attaches_the_image():
    rendered = render_prompt(SectionKind.OUTCROP_DESCRIPTION, images=[IMG])
    assert "describa el afloramiento geológico visible" in rendered.text
    assert rendered.attached_images == [IMG]


def test_missing_slot_error_names_the_slot():
    with pytest.raises(MissingSlotError) as err:
        render_prompt(SectionKind.OBJECTIVES, context={})
    assert err.value.slot == "title"


def test_image_rules_enforced():
    with pytest.raises(ImageAttachmentError):
        render_prompt(SectionKind.OUTCROP_DESCRIPTION, images=[])
    with pytest.raises(ImageAttachmentError):
        render_prompt(SectionKind.OUTCROP_DESCRIPTION, images=[IMG, HAND_IMG])
    with pytest.raises(ImageAttachmentError):
        render_prompt(SectionKind.OBJECTIVES, context=GOLDEN_CONTEXT, images=[IMG])


def test_rendering_is_deterministic():
    one = render_prompt(SectionKind.CONCLUSIONS, context=GOLDEN_CONTEXT)
    two = render_prompt(SectionKind.CONCLUSIONS, context=GOLDEN_CONTEXT)
    assert one.text == two.text


def test_substitution_only_touches_placeholder_spans():
    catalog = load_catalog()
    slot_re = re.compile(r"\{\{(\w+)\}\}")
    marker = "\u00a4"
    for kind, template in catalog.templates.items():
        context = {slot: marker for slot in template.required_slots}
        images = [IMG] if template.expects_image else []
        rendered = render_prompt(kind, context=context, images=images)
        assert rendered.text == slot_re.sub(marker, template.template_text)


def test_templates_declare_their_placeholders_and_word_limit():
    catalog = load_catalog()
    slot_re = re.compile(r"\{\{(\w+)\}\}")
    assert set(catalog.templates) == set(SECTION_ORDER)
    for template in catalog.templates.values():
        assert set(slot_re.findall(template.template_text)) <= set(template.required_slots)
        assert template.word_limit == 100


def test_stage2_requires_stage1_slot():
    for kind in (SectionKind.INTRODUCTION_STAGE2, SectionKind.DISCUSSION_STAGE2):
        with pytest.raises(MissingSlotError) as err:
            render_prompt(kind, context={})
        assert err.value.slot == "stage1_text"


# -- preliminary prompt -------------------------------------------------------

def test_preliminary_concatenates_five_components_in_order():
    rendered = render_preliminary(role="rol", request="pide", geo_features="geo",
                                  geotech_features="geotec", length="corto")
    assert rendered.text == "rol pide geo geotec corto"
    assert rendered.kind is SectionKind.PRELIMINARY


def test_preliminary_defaults_request_the_catalog_features():
    rendered = render_preliminary()
    for fragment in ("color", "tipo de roca", "estructuras geológicas",
                     "calidad del macizo rocoso", "juntas", "100 palabras"):
        assert fragment in rendered.text


def test_preliminary_empty_component_is_named():
    with pytest.raises(MissingSlotError) as err:
        render_preliminary(role="  ")
    assert err.value.slot == "role"


# -- dispatch plan -----------------------------------------------------------

def _plan(kinds) -> list[RenderedPrompt]:
    return [RenderedPrompt(kind=k, text=k.value) for k in kinds]


FULL_SEQUENCE = [
    SectionKind.OBJECTIVES,
    SectionKind.INTRODUCTION_STAGE1,
    SectionKind.INTRODUCTION_STAGE2,
    SectionKind.OUTCROP_DESCRIPTION,
    SectionKind.HAND_SAMPLE_DESCRIPTION,
    SectionKind.SCHMIDT_INTERPRETATION,
    SectionKind.DISCUSSION_STAGE1,
    SectionKind.DISCUSSION_STAGE2,
    SectionKind.CONCLUSIONS,
]


def test_full_sequence_accepted():
    plan = compose_final(_plan(FULL_SEQUENCE))
    assert [p.kind for p in plan] == FULL_SEQUENCE


def test_seven_section_sequence_with_single_stage_accepted():
    kinds = [SectionKind.OBJECTIVES, SectionKind.INTRODUCTION_STAGE1,
             SectionKind.OUTCROP_DESCRIPTION, SectionKind.HAND_SAMPLE_DESCRIPTION,
             SectionKind.SCHMIDT_INTERPRETATION, SectionKind.DISCUSSION_STAGE1,
             SectionKind.CONCLUSIONS]
    assert [p.kind for p in compose_final(_plan(kinds))] == kinds


def test_conclusions_before_objectives_is_a_sequencing_error():
    kinds = [SectionKind.CONCLUSIONS] + FULL_SEQUENCE[:-1]
    with pytest.raises(SequencingError):
        compose_final(_plan(kinds))


def test_duplicate_kind_is_a_sequencing_error():
    kinds = FULL_SEQUENCE[:6] + [SectionKind.DISCUSSION_STAGE1,
                                 SectionKind.DISCUSSION_STAGE1,
                                 SectionKind.CONCLUSIONS]
    with pytest.raises(SequencingError):
        compose_final(_plan(kinds))


def test_stage2_without_stage1_rejected():
    kinds = [k for k in FULL_SEQUENCE if k is not SectionKind.INTRODUCTION_STAGE1]
    with pytest.raises(SequencingError):
        compose_final(_plan(kinds))


def test_missing_section_rejected():
    kinds = [k for k in FULL_SEQUENCE if k is not SectionKind.CONCLUSIONS]
    with pytest.raises(SequencingError):
        compose_final(_plan(kinds))


def test_preliminary_not_allowed_in_plan():
    with pytest.raises(SequencingError):
        compose_final(_plan([SectionKind.PRELIMINARY] + FULL_SEQUENCE))


def test_empty_plan_rejected():
    with pytest.raises(SequencingError):
        compose_final([])
