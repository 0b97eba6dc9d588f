"""Shared exception types.

Every error carries a short machine-readable ``code`` so the HTTP layer and
the CLI can map failures without string matching.
"""
from __future__ import annotations


class RockReportError(Exception):
    code = "error"


class FieldValidationError(RockReportError):
    """A single out-of-range or malformed field, identified by name."""

    code = "validation"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class InsufficientDataError(RockReportError):
    code = "insufficient_data"


class MissingSlotError(RockReportError):
    """A prompt template slot was not supplied by the caller."""

    code = "missing_slot"

    def __init__(self, slot: str):
        super().__init__(f"missing prompt slot: {slot}")
        self.slot = slot


class ImageAttachmentError(RockReportError):
    code = "image_attachment"


class SequencingError(RockReportError):
    """Prompt dispatch plan is out of order, incomplete, or duplicated."""

    code = "sequencing"


class DependencyError(RockReportError):
    """A generation step is missing a required upstream output."""

    code = "dependency"


class AssemblyError(RockReportError):
    """Report assembly found mandatory sections missing."""

    code = "assembly"

    def __init__(self, missing: list[str]):
        super().__init__(f"missing mandatory sections: {', '.join(missing)}")
        self.missing = list(missing)


class EmptyInputError(RockReportError):
    code = "empty_input"


class SchemaError(RockReportError):
    """A tabular input does not match the documented column set."""

    code = "schema"

    def __init__(self, column: str, message: str | None = None):
        super().__init__(message or f"missing column: {column}")
        self.column = column


class IntegrityError(RockReportError):
    code = "integrity"


class NotFoundError(RockReportError):
    code = "not_found"


class ParseError(RockReportError):
    """A persisted document could not be decoded."""

    code = "parse"

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ExportFormatError(RockReportError):
    code = "export_format"
