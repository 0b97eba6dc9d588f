"""Loader and band lookups for the rating-table configuration files.

The RMR and SMR tables ship as versioned JSON under ``geomech/data/`` so the
numbers are auditable and swappable without touching code. All scoring goes
through the lookup helpers here; boundary values resolve to the band listed
first (the configs list bands from the more favorable side).
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path


def load_table(name: str, path: str | Path | None = None) -> dict:
    """Load a rating-table config by file name, or from an explicit path."""
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    return _load_packaged(name)


@lru_cache(maxsize=None)
def _load_packaged(name: str) -> dict:
    data = resources.files("rockreport.geomech").joinpath("data", name)
    return json.loads(data.read_text(encoding="utf-8"))


def numeric_points(spec: dict, value: float) -> int:
    """Points for a numeric parameter; edges fall in the first matching band."""
    bands = spec["bands"]
    if spec["direction"] == "higher_is_better":
        for band in bands:
            if value >= band["min"]:
                return band["points"]
        return bands[-1]["points"]
    for band in bands:
        if band["max"] is None or value <= band["max"]:
            return band["points"]
    return bands[-1]["points"]


def category_points(spec: dict, value: str) -> int:
    return spec["categories"][value]


def scan_min_bands(bands: list[dict], value: float) -> float:
    """First band whose lower edge admits ``value`` (inclusivity per band)."""
    for band in bands:
        lo = band.get("min")
        if lo is None:
            return band["value"]
        if value > lo or (band.get("min_inclusive", True) and value == lo):
            return band["value"]
    return bands[-1]["value"]


def scan_max_bands(bands: list[dict], value: float) -> float:
    """First band whose upper edge admits ``value`` (inclusivity per band)."""
    for band in bands:
        hi = band.get("max")
        if hi is None:
            return band["value"]
        if value < hi or (band.get("max_inclusive", True) and value == hi):
            return band["value"]
    return bands[-1]["value"]


def classify(classes: list[dict], total: float) -> tuple[str, str]:
    """Map a clamped [0, 100] total onto the class bands (label, description)."""
    total = min(max(total, 0.0), 100.0)
    for band in classes:
        if total >= band["min"]:
            return band["label"], band["description"]
    last = classes[-1]
    return last["label"], last["description"]
