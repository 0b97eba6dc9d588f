"""Section prompt catalog: loading, slot substitution, and dispatch plans.

Templates live as kind-named text files next to a ``manifest.json`` slot
manifest (see ``catalog/``). Slots use double-brace placeholders so the
marker can never collide with the Spanish prose. Rendering substitutes slot
values verbatim and never touches characters outside placeholder spans.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..domain import ImageRef, SectionKind
from ..errors import ImageAttachmentError, MissingSlotError, SequencingError

SLOT_RE = re.compile(r"\{\{(\w+)\}\}")

# Dispatch order for a full report, one entry per stage. The seven logical
# report sections map onto this; stage-2 entries are optional refinements
# that must follow their stage-1.
SECTION_ORDER: tuple[SectionKind, ...] = (
    SectionKind.OBJECTIVES,
    SectionKind.INTRODUCTION_STAGE1,
    SectionKind.INTRODUCTION_STAGE2,
    SectionKind.OUTCROP_DESCRIPTION,
    SectionKind.HAND_SAMPLE_DESCRIPTION,
    SectionKind.SCHMIDT_INTERPRETATION,
    SectionKind.DISCUSSION_STAGE1,
    SectionKind.DISCUSSION_STAGE2,
    SectionKind.CONCLUSIONS,
)

# Logical section -> the kinds that can represent it in a dispatch plan.
SECTION_GROUPS: tuple[tuple[str, tuple[SectionKind, ...]], ...] = (
    ("objectives", (SectionKind.OBJECTIVES,)),
    ("introduction", (SectionKind.INTRODUCTION_STAGE1, SectionKind.INTRODUCTION_STAGE2)),
    ("outcrop_description", (SectionKind.OUTCROP_DESCRIPTION,)),
    ("hand_sample_description", (SectionKind.HAND_SAMPLE_DESCRIPTION,)),
    ("schmidt_interpretation", (SectionKind.SCHMIDT_INTERPRETATION,)),
    ("discussion", (SectionKind.DISCUSSION_STAGE1, SectionKind.DISCUSSION_STAGE2)),
    ("conclusions", (SectionKind.CONCLUSIONS,)),
)

STAGE2_OF = {
    SectionKind.INTRODUCTION_STAGE2: SectionKind.INTRODUCTION_STAGE1,
    SectionKind.DISCUSSION_STAGE2: SectionKind.DISCUSSION_STAGE1,
}

PRELIMINARY_COMPONENT_ORDER = ("role", "request", "geo_features", "geotech_features", "length")


@dataclass(frozen=True)
class PromptTemplate:
    kind: SectionKind
    template_text: str
    required_slots: tuple[str, ...]
    expects_image: bool
    word_limit: int = 100


@dataclass
class RenderedPrompt:
    kind: SectionKind
    text: str
    attached_images: list[ImageRef] = field(default_factory=list)


@dataclass(frozen=True)
class PromptCatalog:
    templates: dict[SectionKind, PromptTemplate]
    preliminary_components: dict[str, str]

    def template(self, kind: SectionKind) -> PromptTemplate:
        if kind not in self.templates:
            raise KeyError(f"no template for section kind {kind.value!r}")
        return self.templates[kind]


def load_catalog(directory: str | Path | None = None) -> PromptCatalog:
    """Load a catalog directory; defaults to the packaged one."""
    if directory is None:
        return _packaged_catalog()
    return _read_catalog(Path(directory))


@lru_cache(maxsize=1)
def _packaged_catalog() -> PromptCatalog:
    return _read_catalog(Path(str(resources.files("rockreport.prompts").joinpath("catalog"))))


def _read_catalog(directory: Path) -> PromptCatalog:
    manifest = json.loads((directory / "manifest.json").read_text(encoding="utf-8"))
    word_limit = manifest.get("default_word_limit", 100)
    templates: dict[SectionKind, PromptTemplate] = {}
    for kind_name, entry in manifest["templates"].items():
        kind = SectionKind(kind_name)
        text = (directory / f"{kind_name}.txt").read_text(encoding="utf-8")
        if text.endswith("\n"):
            text = text[:-1]
        slots = tuple(entry["required_slots"])
        placeholders = set(SLOT_RE.findall(text))
        unknown = placeholders - set(slots)
        if unknown:
            raise ValueError(
                f"template {kind_name!r} has placeholders not in its manifest: {sorted(unknown)}")
        templates[kind] = PromptTemplate(
            kind=kind,
            template_text=text,
            required_slots=slots,
            expects_image=bool(entry["expects_image"]),
            word_limit=entry.get("word_limit", word_limit),
        )
    return PromptCatalog(
        templates=templates,
        preliminary_components=dict(manifest["preliminary_components"]),
    )


def render_prompt(kind: SectionKind,
                  context: dict[str, str] | None = None,
                  images: list[ImageRef] | None = None,
                  catalog: PromptCatalog | None = None) -> RenderedPrompt:
    """Substitute the template's slots with ``context`` values, verbatim.

    Image-expecting kinds (outcrop / hand sample) take exactly one attached
    image; the others take none.
    """
    cat = catalog or load_catalog()
    template = cat.template(kind)
    context = context or {}
    images = list(images or [])

    for slot in template.required_slots:
        if slot not in context:
            raise MissingSlotError(slot)

    if template.expects_image:
        if len(images) != 1:
            raise ImageAttachmentError(
                f"section {kind.value!r} requires exactly one attached image, got {len(images)}")
    elif images:
        raise ImageAttachmentError(
            f"section {kind.value!r} does not take attached images")

    def substitute(match: re.Match[str]) -> str:
        return context[match.group(1)]

    text = SLOT_RE.sub(substitute, template.template_text)
    if SLOT_RE.search(text) is not None:
        # Slot values themselves may not smuggle unresolved placeholders.
        raise MissingSlotError(SLOT_RE.search(text).group(1))
    return RenderedPrompt(kind=kind, text=text, attached_images=images)


def render_preliminary(role: str | None = None,
                       request: str | None = None,
                       geo_features: str | None = None,
                       geotech_features: str | None = None,
                       length: str | None = None,
                       catalog: PromptCatalog | None = None) -> RenderedPrompt:
    """Compose the screening prompt: role + request + geological features +
    geotechnical features + length limit, single-space joined in that order.
    Missing components fall back to the catalog defaults."""
    cat = catalog or load_catalog()
    supplied = {"role": role, "request": request, "geo_features": geo_features,
                "geotech_features": geotech_features, "length": length}
    parts: list[str] = []
    for name in PRELIMINARY_COMPONENT_ORDER:
        value = supplied[name]
        if value is None:
            value = cat.preliminary_components[name]
        if not value.strip():
            raise MissingSlotError(name)
        parts.append(value)
    return RenderedPrompt(kind=SectionKind.PRELIMINARY, text=" ".join(parts))


def compose_final(prompts: list[RenderedPrompt]) -> list[RenderedPrompt]:
    """Validate a full-report dispatch plan and return it.

    The plan must cover every report section in the canonical order, without
    duplicates; stage-2 prompts must follow their stage-1. Prompts are
    dispatched per section, never concatenated into a single call.
    """
    if not prompts:
        raise SequencingError("empty prompt sequence")

    kinds = [p.kind for p in prompts]
    if SectionKind.PRELIMINARY in kinds:
        raise SequencingError("preliminary prompt cannot be part of a report plan")

    seen: set[SectionKind] = set()
    for kind in kinds:
        if kind in seen:
            raise SequencingError(f"duplicate section kind {kind.value!r}")
        seen.add(kind)

    positions = [SECTION_ORDER.index(k) for k in kinds]
    if positions != sorted(positions):
        raise SequencingError("prompt sequence out of report order")

    for stage2, stage1 in STAGE2_OF.items():
        if stage2 in seen and stage1 not in seen:
            raise SequencingError(
                f"{stage2.value!r} requires {stage1.value!r} earlier in the sequence")

    missing = [name for name, group in SECTION_GROUPS
               if not any(k in seen for k in group)]
    if missing:
        raise SequencingError(f"plan is missing sections: {', '.join(missing)}")
    return list(prompts)
