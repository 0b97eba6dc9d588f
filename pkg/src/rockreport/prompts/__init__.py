"""Prompt catalog and rendering for report sections."""
from ..domain import SectionKind
from .engine import (
    PRELIMINARY_COMPONENT_ORDER,
    SECTION_GROUPS,
    SECTION_ORDER,
    PromptCatalog,
    PromptTemplate,
    RenderedPrompt,
    compose_final,
    load_catalog,
    render_preliminary,
    render_prompt,
)

__all__ = [
    "PRELIMINARY_COMPONENT_ORDER",
    "SECTION_GROUPS",
    "SECTION_ORDER",
    "PromptCatalog",
    "PromptTemplate",
    "RenderedPrompt",
    "SectionKind",
    "compose_final",
    "load_catalog",
    "render_preliminary",
    "render_prompt",
]
