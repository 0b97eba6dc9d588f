"""Reference-dataset ingestion and the file-backed project store.

Projects persist as one canonical-JSON document per id, written with a
temp-file + rename protocol so a crashed write never leaves a half-written
readable document. Images are stored content-addressed (sha256 digest key)
beside the project documents and referenced by ``storage_key``.
"""
from __future__ import annotations

import csv
import hashlib
import json
import os
import threading
import unicodedata
import uuid
from dataclasses import dataclass
from pathlib import Path

from .domain import Project, RockType, canonical_json, project_from_dict
from .errors import IntegrityError, NotFoundError, ParseError, SchemaError

DATASET_COLUMNS = ("id", "rock_type", "geology", "color",
                   "main_structures", "mass_quality", "joint_description")

# Accepted id prefixes (Spanish field names and English class names), matched
# after casefolding and diacritic stripping.
_PREFIX_CLASSES = {
    "sedimentaria": RockType.SEDIMENTARY,
    "sedimentary": RockType.SEDIMENTARY,
    "ignea": RockType.IGNEOUS,
    "igneous": RockType.IGNEOUS,
    "metamorfica": RockType.METAMORPHIC,
    "metamorphic": RockType.METAMORPHIC,
}


@dataclass
class DatasetRow:
    id: str
    rock_type: RockType
    geology: str
    color: str
    main_structures: str
    mass_quality: str
    joint_description: str


def _fold(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text.casefold())
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def rock_type_from_id(row_id: str) -> RockType:
    prefix = _fold(row_id.strip().split(" ")[0]) if row_id.strip() else ""
    if prefix not in _PREFIX_CLASSES:
        raise IntegrityError(
            f"id {row_id!r} does not start with a recognized rock-class prefix")
    return _PREFIX_CLASSES[prefix]


def load_dataset(path: str | Path,
                 columns: tuple[str, ...] = DATASET_COLUMNS) -> list[DatasetRow]:
    """Load the reference dataset from a CSV export, preserving row order."""
    path = Path(path)
    with path.open(encoding="utf-8-sig", newline="") as handle:
        reader = csv.DictReader(handle)
        header = set(reader.fieldnames or [])
        for column in columns:
            if column not in header:
                raise SchemaError(column)
        rows: list[DatasetRow] = []
        seen: set[str] = set()
        for record in reader:
            row_id = (record["id"] or "").strip()
            if row_id in seen:
                raise IntegrityError(f"duplicate dataset id {row_id!r}")
            seen.add(row_id)
            rows.append(DatasetRow(
                id=row_id,
                rock_type=rock_type_from_id(row_id),
                geology=record["geology"] or "",
                color=record["color"] or "",
                main_structures=record["main_structures"] or "",
                mass_quality=record["mass_quality"] or "",
                joint_description=record["joint_description"] or "",
            ))
    return rows


class ProjectStore:
    """One JSON document per project under ``root/projects``; writes are
    serialized per project id, reads are lock-free."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.projects_dir = self.root / "projects"
        self.images_dir = self.root / "images"
        self.projects_dir.mkdir(parents=True, exist_ok=True)
        self.images_dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def _path(self, project_id: str) -> Path:
        return self.projects_dir / f"{project_id}.json"

    def new_id(self) -> str:
        return uuid.uuid4().hex[:12]

    def save_project(self, project: Project, project_id: str | None = None) -> str:
        project_id = project_id or self.new_id()
        payload = canonical_json(project).encode("utf-8")
        target = self._path(project_id)
        with self._lock_for(project_id):
            tmp = target.with_name(f".{target.name}.{uuid.uuid4().hex}.tmp")
            with open(tmp, "wb") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp, target)
        return project_id

    def load_project(self, project_id: str) -> Project:
        target = self._path(project_id)
        if not target.exists():
            raise NotFoundError(f"project {project_id!r} not found")
        try:
            raw = json.loads(target.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(str(target), f"corrupt project document: {exc}") from exc
        if not isinstance(raw, dict):
            raise ParseError(str(target), "project document must be a JSON object")
        return project_from_dict(raw)

    def list_projects(self) -> list[str]:
        return sorted(p.stem for p in self.projects_dir.glob("*.json"))

    def delete_project(self, project_id: str) -> None:
        target = self._path(project_id)
        if not target.exists():
            raise NotFoundError(f"project {project_id!r} not found")
        with self._lock_for(project_id):
            target.unlink()

    # -- content-addressed image blobs --------------------------------------

    def put_image(self, data: bytes) -> str:
        key = hashlib.sha256(data).hexdigest()
        target = self.images_dir / key
        if not target.exists():
            tmp = target.with_name(f".{key}.{uuid.uuid4().hex}.tmp")
            tmp.write_bytes(data)
            os.replace(tmp, target)
        return key

    def get_image(self, storage_key: str) -> bytes:
        target = self.images_dir / storage_key
        if not target.exists():
            raise NotFoundError(f"image {storage_key!r} not found")
        return target.read_bytes()
